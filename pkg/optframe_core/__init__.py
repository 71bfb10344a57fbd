#!/usr/bin/python3
# -*- coding:utf-8 -*-
# OptFrame.

__version__ = "2026.1.0"
used_logger = "OptFrameLogger"

import optframe_utils

from optframe_core.design.partition import PartitionSolver
from optframe_core.design.synth import FrameSynthesizer
from optframe_core.oracle.trials import OptimalityOracle


# To be used similar to singleton objects.
logger = optframe_utils.Logger(logger=used_logger)
config = optframe_utils.Configuration(logger=used_logger)

partition_solver = PartitionSolver(logger=used_logger)
frame_synthesizer = FrameSynthesizer(logger=used_logger)
optimality_oracle = OptimalityOracle(logger=used_logger)
