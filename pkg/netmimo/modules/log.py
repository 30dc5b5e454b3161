import os
import sys
import logging
import logging.handlers
from typing import Dict, Optional

VERBOSE1 = 19
VERBOSE2 = 18
VERBOSE3 = 17
# per-iteration solver records, below DEBUG
TRACE = 9

for _level, _name in (
    (VERBOSE1, "VERBOSE1"),
    (VERBOSE2, "VERBOSE2"),
    (VERBOSE3, "VERBOSE3"),
    (TRACE, "TRACE"),
):
    logging.addLevelName(_level, _name)

LOGFILE_ENV = "NM_LOGFILE"
TRACEFILE_ENV = "NM_TRACEFILE"

# -v count -> log level, counts above 4 mean TRACE
VERBOSITY_TO_LEVEL: Dict[int, int] = {
    0: logging.INFO,
    1: VERBOSE1,
    2: VERBOSE2,
    3: VERBOSE3,
    4: logging.DEBUG,
}

LOGFILE_MAX_BYTES = 512000


class LevelFormatter(logging.Formatter):
    """
    Message-only output for INFO and the verbose levels,
    'LEVEL: ' prefix otherwise, call site for TRACE.
    """

    def __init__(self, prefix: str = ""):
        super().__init__()
        self.plain = logging.Formatter(prefix + "%(message)s")
        self.leveled = logging.Formatter(prefix + "%(levelname)s: %(message)s")
        self.traced = logging.Formatter(
            prefix
            + "%(levelname)s: in %(funcName)s() at %(filename)s:%(lineno)d: %(message)s"
        )

    def format(self, record: logging.LogRecord) -> str:
        if record.levelno == TRACE:
            return self.traced.format(record)
        if logging.DEBUG < record.levelno < logging.WARNING:
            return self.plain.format(record)
        return self.leveled.format(record)


def rotating_file_handler(path: str, level: int) -> logging.Handler:
    handler = logging.handlers.RotatingFileHandler(
        filename=path, maxBytes=LOGFILE_MAX_BYTES, backupCount=0
    )
    handler.setLevel(level)
    handler.setFormatter(LevelFormatter("%(asctime)s | %(name)30s | "))
    return handler


class NetMimoLogger(logging.Logger):
    """
    Logger class of every netmimo module.

    The first instance attaches handlers to the root logger: stdout, plus
    rotating files named by NM_LOGFILE (same level as stdout) and NM_TRACEFILE
    (always at TRACE, so solver iterations can be kept without flooding stdout).
    """

    console_handler: Optional[logging.Handler] = None
    logfile_handler: Optional[logging.Handler] = None
    tracefile_handler: Optional[logging.Handler] = None

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.install_handlers()

    @classmethod
    def install_handlers(cls):
        root = logging.getLogger()
        root.setLevel(logging.NOTSET)

        if cls.console_handler is None:
            cls.console_handler = logging.StreamHandler(sys.stdout)
            cls.console_handler.setLevel(logging.INFO)
            cls.console_handler.setFormatter(LevelFormatter())
            root.addHandler(cls.console_handler)

        logfile = os.getenv(LOGFILE_ENV)
        if cls.logfile_handler is None and logfile:
            cls.logfile_handler = rotating_file_handler(logfile, logging.INFO)
            root.addHandler(cls.logfile_handler)

        tracefile = os.getenv(TRACEFILE_ENV)
        if cls.tracefile_handler is None and tracefile:
            cls.tracefile_handler = rotating_file_handler(tracefile, TRACE)
            root.addHandler(cls.tracefile_handler)

    @classmethod
    def set_verbosity_level(cls, verbosity_level: Optional[int]):
        cls.install_handlers()
        level = cls.verb_level_to_log_level(verbosity_level)
        for handler in (cls.console_handler, cls.logfile_handler):
            if handler is not None:
                handler.setLevel(level)

    @staticmethod
    def verb_level_to_log_level(verbosity_level: Optional[int]) -> int:
        """Map the -v count of a tool to a logging level"""
        count = max(verbosity_level or 0, 0)
        return VERBOSITY_TO_LEVEL.get(count, TRACE)

    def verbose1(self, message, *args, **kwargs):
        if self.isEnabledFor(VERBOSE1):
            self._log(VERBOSE1, message, args, **kwargs)

    def verbose2(self, message, *args, **kwargs):
        if self.isEnabledFor(VERBOSE2):
            self._log(VERBOSE2, message, args, **kwargs)

    def verbose3(self, message, *args, **kwargs):
        if self.isEnabledFor(VERBOSE3):
            self._log(VERBOSE3, message, args, **kwargs)

    def trace(self, message, *args, **kwargs):
        if self.isEnabledFor(TRACE):
            self._log(TRACE, message, args, **kwargs)


logging.setLoggerClass(NetMimoLogger)


def getLogger(logger_name: str) -> NetMimoLogger:
    """logging.getLogger() returning NetMimoLogger"""
    logger = logging.getLogger(logger_name)
    assert isinstance(logger, NetMimoLogger)
    return logger


def get_verbose_logger(logger_name: str, verbosity_level: Optional[int]) -> NetMimoLogger:
    """Logger for a tool's main module with console level set from -v count"""
    logger = getLogger(logger_name)
    logger.set_verbosity_level(verbosity_level)
    logger.debug("Logging initialized")
    return logger
