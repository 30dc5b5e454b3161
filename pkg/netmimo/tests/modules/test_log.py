import logging

from netmimo.modules import log as nm_log
from netmimo.modules.log import NetMimoLogger, getLogger


def test_verbosity_levels():
    convert = NetMimoLogger.verb_level_to_log_level
    assert convert(None) == logging.INFO
    assert convert(0) == logging.INFO
    assert convert(1) == nm_log.VERBOSE1
    assert convert(2) == nm_log.VERBOSE2
    assert convert(3) == nm_log.VERBOSE3
    assert convert(4) == logging.DEBUG
    assert convert(5) == nm_log.TRACE
    assert convert(9) == nm_log.TRACE


def test_level_order():
    assert logging.INFO > nm_log.VERBOSE1 > nm_log.VERBOSE2 > nm_log.VERBOSE3 > logging.DEBUG
    assert logging.DEBUG > nm_log.TRACE
    assert logging.getLevelName(nm_log.TRACE) == "TRACE"


def test_get_logger():
    logger = getLogger("netmimo.tests.some_module")
    assert isinstance(logger, NetMimoLogger)


def make_record(level: int) -> logging.LogRecord:
    return logging.LogRecord("netmimo.x", level, "solver.py", 42, "step %d", (3,), None, "iterate")


def test_formatter_prefixes():
    formatter = nm_log.LevelFormatter()
    assert formatter.format(make_record(logging.INFO)) == "step 3"
    assert formatter.format(make_record(nm_log.VERBOSE2)) == "step 3"
    assert formatter.format(make_record(logging.WARNING)) == "WARNING: step 3"
    assert formatter.format(make_record(logging.DEBUG)) == "DEBUG: step 3"
    assert (
        formatter.format(make_record(nm_log.TRACE))
        == "TRACE: in iterate() at solver.py:42: step 3"
    )


def test_set_verbosity_level_keeps_console_in_sync():
    NetMimoLogger.set_verbosity_level(2)
    assert NetMimoLogger.console_handler.level == nm_log.VERBOSE2
    NetMimoLogger.set_verbosity_level(0)
    assert NetMimoLogger.console_handler.level == logging.INFO
