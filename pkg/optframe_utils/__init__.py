#!/usr/bin/python3
# -*- coding:utf-8 -*-
# OptFrame.

from optframe_utils.logger import Logger
from optframe_utils.configuration import Configuration
