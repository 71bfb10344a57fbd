#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

import pathlib
import sys
import logging
from logging import handlers


class Logger(object):
    """ """

    def __init__(self, logger="DefaultLogger"):
        """ """
        self.logger_name = logger
        self.logger = logging.getLogger(logger)
        # Handlers added by this object. Removed again on a new setup.
        self.added_handlers = []

    def clear_handlers(self):
        """ """
        for handler in self.added_handlers:
            self.logger.removeHandler(handler)
            handler.close()
        self.added_handlers = []

    def setup_stream_log(self, level="warning"):
        """Log to stderr. Stdout is reserved for result documents."""
        try:
            self.clear_handlers()
            log_level = logging.getLevelName(str(level).upper())
            if not isinstance(log_level, int):
                log_level = logging.WARNING
            self.logger.setLevel(min(log_level, self.logger.level or log_level))
            log_handler = logging.StreamHandler(sys.stderr)
            log_handler.setLevel(log_level)
            formatter = logging.Formatter("%(levelname)s : %(message)s")
            log_handler.setFormatter(formatter)
            self.logger.addHandler(log_handler)
            self.added_handlers.append(log_handler)
        except Exception as e:
            print("Logger: Failed to setup stream logging: " + str(e), file=sys.stderr)

    def setup_rotating_log(
        self,
        logging_dir="",
        log_name="info_log.txt",
        debug_log_name="debug_log.txt",
    ):
        """ """
        try:
            # Create directory for log files.
            logging_dir_path = pathlib.Path(logging_dir)
            if not logging_dir_path.exists():
                logging_dir_path.mkdir(parents=True)
            self.logger.setLevel(logging.DEBUG)

            # Info and debug files, same format.
            for file_name, file_level in [
                (log_name, logging.INFO),
                (debug_log_name, logging.DEBUG),
            ]:
                log_file_path = pathlib.Path(logging_dir, file_name)
                log_handler = handlers.RotatingFileHandler(
                    str(log_file_path), maxBytes=1024 * 1024, backupCount=10
                )
                log_handler.setFormatter(
                    logging.Formatter("%(asctime)s %(levelname)-8s : %(message)s ")
                )
                log_handler.setLevel(file_level)
                self.logger.addHandler(log_handler)
                self.added_handlers.append(log_handler)

        except Exception as e:
            print("Logger: Failed to setup logging: " + str(e), file=sys.stderr)
