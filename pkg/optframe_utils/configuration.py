#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

import pathlib
import yaml
import logging


class Configuration:
    """ """

    def __init__(self, logger="DefaultLogger"):
        """ """
        self.logger = logging.getLogger(logger)
        self.clear()

    def clear(self):
        """ """
        self.config = {}
        self.config_default = {}

    def load_config(
        self,
        config_file=None,
        config_default_dir="",
        config_default_file="optframe_config_default.yaml",
    ):
        """Defaults are always read. The user file is optional."""
        self.clear()
        config_default_path = pathlib.Path(config_default_dir, config_default_file)
        if config_default_path.exists():
            with open(config_default_path) as file:
                self.config_default = yaml.load(file, Loader=yaml.FullLoader) or {}
        else:
            self.logger.warning(
                "Default config file missing: " + str(config_default_path)
            )
        if config_file:
            config_path = pathlib.Path(config_file)
            with open(config_path) as file:
                self.config = yaml.load(file, Loader=yaml.FullLoader) or {}
            self.logger.debug("Config loaded: " + config_path.name)

    def get(self, key_path, default=""):
        """ """
        result = default
        value = self.get_value(key_path)
        if value is not None:
            result = value
        return result

    def get_value(self, key_path):
        """User config first, then defaults. None if missing in both."""
        key_parts = key_path.split(".")
        for config_dict in [self.config, self.config_default]:
            value = config_dict
            for key_part in key_parts:
                if isinstance(value, dict) and (key_part in value):
                    value = value[key_part]
                else:
                    value = None
                    break
            if value is not None:
                return value
        return None
