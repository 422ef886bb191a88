#!/usr/bin/env python3
#
# tracesim_common.py - Common functions used by the tracesim modules and bin related tools

"""
tracesim_common.py - Common functions used by the tracesim modules and bin related tools

IMPORTANT NOTE: To return an error message to a caller, set: tracesim_last_errmsg

Library functions do not raise on bad data.  They log the problem,
record a message that may be read back via return_last_errmsg(),
and return None (or False).
"""

# import modules
#
import sys
import os
import csv
import json
import math
import inspect
import hashlib
import logging
import random


# import from modules
#
from pathlib import Path
from logging.handlers import SysLogHandler


# 3rd party imports
#
# We use the python filelock module to serialize writers of an output directory.  See:
#
#    https://pypi.org/project/filelock/
#    https://py-filelock.readthedocs.io/en/latest/api.html
#
from filelock import Timeout, FileLock


##################
# Global constants
##################

# tracesim_common.py version
#
# NOTE: Use string of the form: "x.y[.z] YYYY-MM-DD"
#
VERSION_TRACESIM_COMMON = "1.3.0 2026-10-17"

# tracesim tool version as recorded in every run manifest
#
# NOTE: Use string of the form: "x.y[.z] YYYY-MM-DD"
#
VERSION_TRACESIM = "1.3.0 2026-10-17"

# run manifest JSON values
#
NO_COMMENT_VALUE = "mandatory comment: because comments were removed from the original JSON spec"
MANIFEST_VERSION_VALUE = "1.1 2026-09-30"

# model names
#
# The command line accepts the lower case form.
#
MODEL_USPM = "USPM"
MODEL_NDM = "NDM"
MODEL_LIM = "LIM"
MODEL_PFM = "PFM"
MODEL_KINDS = (MODEL_USPM, MODEL_NDM, MODEL_LIM, MODEL_PFM)

# model tag given to routes read from traceroute trace files
#
MODEL_TRACE = "trace"

# LIM alpha range
#
# Outside of this range k^alpha loses too much precision for degrees
# seen in router level graphs (up to ~10^5).
#
LIM_ALPHA_MIN = -5.0
LIM_ALPHA_MAX = 3.0

# PFM alpha range: 0 < alpha <= PFM_ALPHA_MAX
#
PFM_ALPHA_MAX = 3.0

# bounded Pareto minimum value L
#
# The maximum value M defaults to the node count of the loaded topology.
#
DEFAULT_PARETO_MIN = 10.0

# repetitions when the model is PFM and --reps was not given
#
# Deterministic models always run exactly once.
#
DEFAULT_PFM_REPS = 100

# mass given to a bin missing from one side of a KL divergence
#
KL_EPSILON = 1e-10

# normalization tolerance for histograms and LIM weights
#
NORM_TOLERANCE = 1e-9

# lock file created under every output directory
#
OUT_DIR_LOCK_NAME = ".tracesim.lock"

# Lock parameters
#
LOCK_TIMEOUT = 13                           # lock timeout in seconds
LOCK_INTERVAL = random.uniform(0.8, 1.2)    # poll for lock at interval 0.8 <= seconds <= 1.2

# SHA256 buffer size
#
# Used by sha256_file(), and is selected to be about 20 4K memory pages.
#
SHA256_BUFSIZE = 20*4096

# lock state - lock object or none
#
# When tracesim_last_lock_fd is not none, we hold a lock on tracesim_last_lock_path.
# When tracesim_last_lock_fd is none, no lock is currently being held.
#
# A run writes into one output directory at a time, so we never hold more than one lock.
#
# pylint: disable-next=global-statement,invalid-name
tracesim_last_lock_fd = None         # FileLock object, or None
# pylint: disable-next=global-statement,invalid-name
tracesim_last_lock_path = None       # path of the file that is locked, or None
# pylint: disable-next=global-statement,invalid-name
tracesim_last_errmsg = ""            # recent error message or empty string

# tracesim logger - how we log events
#
# When tracesim_logger is None, no logging is performed,
# otherwise tracesim_logger is a logging facility setup via setup_logger().
#
# NOTE: Until setup_logger() is called, tracesim_logger is None,
#       and no logging will occur.
#
# pylint: disable-next=invalid-name
tracesim_logger = None


def return_last_errmsg():
    """
    Return the recent error message or empty string

    Returns:
        tracesim_last_errmsg as a string
    """

    # setup
    #
    # pylint: disable-next=global-statement
    global tracesim_last_errmsg

    # paranoia - if tracesim_last_errmsg is not a string, return as string version
    #
    if not isinstance(tracesim_last_errmsg, str):
        tracesim_last_errmsg = str(tracesim_last_errmsg)

    return tracesim_last_errmsg


def set_last_errmsg(msg):
    """
    Record msg as the recent error message.

    Given:
        msg     message, usually of the form "ERROR: func: text" or "Warning: func: text"
    """

    # pylint: disable-next=global-statement
    global tracesim_last_errmsg
    tracesim_last_errmsg = str(msg)


def clear_last_errmsg() -> None:
    """
    Forget any recent error message.

    Call before an operation whose None return may mean either
    "absent" or "error", then test return_last_errmsg().
    """

    # pylint: disable-next=global-statement
    global tracesim_last_errmsg
    tracesim_last_errmsg = ""


def prerr(*args, **kwargs):
    """
    Print to stderr.
    """

    # We do NOT want to call debug from this function because we call this code too frequently
    #no#debug(f'{me}: start')

    print(*args, file=sys.stderr, **kwargs)


def fail(me, msg):
    """
    Log an error, record it as the recent error message.

    Given:
        me      name of the function reporting the error
        msg     error text

    Returns:
        None, so that callers may: return fail(me, '...')
    """

    set_last_errmsg(f'ERROR: {me}: {msg}')
    error(f'{me}: {msg}')
    return None


def caution(me, msg):
    """
    Log a warning, record it as the recent error message.

    Given:
        me      name of the function reporting the warning
        msg     warning text
    """

    set_last_errmsg(f'Warning: {me}: {msg}')
    warning(f'{me}: {msg}')


def is_finite_number(value):
    """
    Return True if value is an int or float (not bool) and finite.
    """

    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return False
    return math.isfinite(value)


# pylint: disable=too-many-branches
# pylint: disable=too-many-statements
#
def setup_logger(logtype, dbglvl) -> None:
    """
    setup_logger - Setup the logging facility.

    Given:
        logtype      "stdout" ==> log to stdout,
                     "stderr" ==> log to stderr,
                     "syslog" ==> log via syslog,
                     "none" ==> do not log,
                     None ==> do not change the log state,
                     all other values ==> do not change the log state

        dbglvl      "dbg" ==> use logging.DEBUG,
                    "debug" ==> use logging.DEBUG,
                    "info" ==> use logging.INFO,
                    "warn" ==> use logging.WARNING,
                    "warning" ==> use logging.WARNING,
                    "err" ==> use logging.ERROR,
                    "error" ==> use logging.ERROR,
                    "crit" ==> use logging.CRITICAL,
                    "critical" ==> use logging.CRITICAL,
                     all other values ==> use logging.INFO

    NOTE: Until setup_logger(logtype) is called, tracesim_logger default None and no logging will occur.

    NOTE: The logtype and dbglvl are case insensitive.
    """

    # setup
    #
    # pylint: disable-next=global-statement
    global tracesim_logger
    me = inspect.currentframe().f_code.co_name
    # We do NOT want to call debug start from this function because this function does the debug setup
    #no# debug(f'{me}: start')
    logging_level = logging.INFO

    # case: logtype is not a string (such as None) or unknown logtype string
    #
    if not logtype or not isinstance(logtype, str) or not logtype.lower() in {'stdout', 'stderr', 'syslog', 'none'}:

        # do not change the log state
        #
        return

    # case: logtype is "none"
    #
    if logtype.lower() == "none":
        tracesim_logger = None
        return

    # set the debug level based on dbglvl
    #
    # We default to logging.INFO if dbglvl is not a string (such as None) or unknown dbglvl string
    #
    if isinstance(dbglvl, str):
        level_name = dbglvl.lower()
        if level_name in ("dbg", "debug"):
            logging_level = logging.DEBUG
        elif level_name == "info":
            logging_level = logging.INFO
        elif level_name in ("warn", "warning"):
            logging_level = logging.WARNING
        elif level_name in ("err", "error"):
            logging_level = logging.ERROR
        elif level_name in ("crit", "critical"):
            logging_level = logging.CRITICAL

    my_logger = logging.getLogger('tracesim')
    my_logger.setLevel(logging_level)

    # all handlers share one format
    #
    formatter = logging.Formatter(
                    '%(asctime)s.%(msecs)03d: %(name)s: %(levelname)s: %(message)s',
                    datefmt='%Y-%m-%d %H:%M:%S')

    # case: logtype is "stdout" or "stderr"
    #
    if logtype.lower() in ("stdout", "stderr"):
        stream = sys.stdout if logtype.lower() == "stdout" else sys.stderr
        handler = logging.StreamHandler(stream)

    # case: logtype is "syslog"
    #
    # log via syslog local5 facility
    #
    else:

        # determine the logging address
        #
        log_address = None
        try:
            for candidate in ("/var/run/syslog",               # macOS
                              "/run/systemd/journal/dev-log",  # Linux and related friends
                              "/dev/log",                      # Linux and related friends symlink
                              "/var/run/log"):                 # FreeBSD and NetBSD and related friends
                if Path(candidate).exists():
                    log_address = candidate
                    break

        # Do not use: except OSError as errcode: because we have no easy way to report the errcode
        #
        except OSError:
            pass

        if not log_address:

            # log access is unknown - use /dev/null
            #
            log_address = "/dev/null"

        handler = SysLogHandler(address = log_address,
                                facility = SysLogHandler.LOG_LOCAL5)

    handler.setLevel(logging_level)
    handler.setFormatter(formatter)

    # replace, rather than stack, handlers when called more than once
    #
    for old_handler in list(my_logger.handlers):
        my_logger.removeHandler(old_handler)
    my_logger.addHandler(handler)
    my_logger.propagate = False

    # save the newly configured logger
    #
    tracesim_logger = my_logger
    debug(f'{me}: end: configured logger')
#
# pylint: enable=too-many-branches
# pylint: enable=too-many-statements


def debug(msg, *args, **kwargs):
    """
    Write a DEBUG message or not depending on tracesim_logger
    """

    # We do NOT want to call debug start from this function because of recursion
    #no# debug(f'{me}: start')

    if tracesim_logger:
        try:
            tracesim_logger.debug(msg, *args, **kwargs)

        except OSError as errcode:
            set_last_errmsg(f'ERROR: debug: tracesim_logger.debug failed: <<{errcode}>>')


def info(msg, *args, **kwargs):
    """
    Write a INFO message if we have called setup_logger to setup tracesim_logger.
    """

    if tracesim_logger:
        try:
            tracesim_logger.info(msg, *args, **kwargs)

        except OSError as errcode:
            set_last_errmsg(f'ERROR: info: tracesim_logger.info failed: <<{errcode}>>')


def warning(msg, *args, **kwargs):
    """
    Write a WARNING message if we have called setup_logger to setup tracesim_logger.
    """

    if tracesim_logger:
        try:
            tracesim_logger.warning(msg, *args, **kwargs)

        except OSError as errcode:
            set_last_errmsg(f'ERROR: warning: tracesim_logger.warning failed: <<{errcode}>>')


def error(msg, *args, **kwargs):
    """
    Write an ERROR message if we have called setup_logger to setup tracesim_logger.
    """

    if tracesim_logger:
        try:
            tracesim_logger.error(msg, *args, **kwargs)

        except OSError as errcode:
            set_last_errmsg(f'ERROR: error: tracesim_logger.error failed: <<{errcode}>>')


# pylint: disable=too-many-return-statements
#
def tracesim_dir_lock(out_dir):
    """
    Lock an output directory

    A side effect of locking is that out_dir and its lock file are created if missing.

    Given:
        out_dir     output directory to lock

        If another directory is currently locked, force the older lock to be unlocked.
        Lock the new directory.
        Register the lock.

    Returns:
        FileLock object     lock successful
        None                lock not successful, or
                            unable to create the lock file
    """

    # setup
    #
    # pylint: disable-next=global-statement
    global tracesim_last_lock_fd
    # pylint: disable-next=global-statement
    global tracesim_last_lock_path
    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    # firewall - check arg
    #
    if not isinstance(out_dir, (str, Path)):
        return fail(me, 'out_dir arg not a string or path')

    # firewall - be sure the directory and lock file exist
    #
    file_lock = str(Path(out_dir) / OUT_DIR_LOCK_NAME)
    try:
        Path(out_dir).mkdir(mode=0o775, parents=True, exist_ok=True)
        Path(file_lock).touch(mode=0o664, exist_ok=True)

    except OSError as errcode:
        return fail(me, f'cannot create lock file: {file_lock} failed: <<{errcode}>>')

    # firewall - must be writable
    #
    if not os.access(file_lock, os.W_OK):
        return fail(me, f'file lock not writable: {file_lock}')

    # Force any stale lock to become unlocked
    #
    if tracesim_last_lock_fd:
        if tracesim_last_lock_fd.is_locked:
            caution(me, f'forcing unlock of old lock for: {tracesim_last_lock_path}')
            tracesim_last_lock_fd.release()
        tracesim_last_lock_fd = None
        tracesim_last_lock_path = None

    # prepare the lock
    #
    lock_fd = FileLock(file_lock, timeout=LOCK_TIMEOUT, blocking=True)

    # attempt to obtain the lock
    #
    try:
        lock_fd.acquire(poll_interval=LOCK_INTERVAL)

    except Timeout:

        # too too long to get the lock
        #
        set_last_errmsg(f'ERROR: {me}: lock timeout after {LOCK_TIMEOUT} secs for: {file_lock}')
        warning(f'{me}: lock timeout file_lock: {file_lock}')
        return None

    except OSError as errcode:
        return fail(me, f'cannot acquire lock: {file_lock} failed: <<{errcode}>>')

    # firewall - verify the lock
    #
    if not lock_fd.is_locked:
        return fail(me, f'failed to keep lock for: {file_lock}')

    # register the lock
    #
    tracesim_last_lock_fd = lock_fd
    tracesim_last_lock_path = file_lock
    debug(f'{me}: end: locked: {tracesim_last_lock_path}')
    return tracesim_last_lock_fd
#
# pylint: enable=too-many-return-statements


def tracesim_dir_unlock() -> None:
    """
    unlock a previously locked output directory
    """

    # setup
    #
    # pylint: disable-next=global-statement
    global tracesim_last_lock_fd
    # pylint: disable-next=global-statement
    global tracesim_last_lock_path
    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    # case: no lock, nothing to do
    #
    if not tracesim_last_lock_fd:
        info(f'{me}: no lock to unlock for: {tracesim_last_lock_path}')
        tracesim_last_lock_path = None
        return

    # release the lock
    #
    tracesim_last_lock_fd.release()
    saved_lock_path = tracesim_last_lock_path
    tracesim_last_lock_fd = None
    tracesim_last_lock_path = None
    debug(f'{me}: end: unlocked: {saved_lock_path}')


def json_safe(value):
    """
    Return value with non-finite floats replaced by None, recursively.

    JSON has no NaN or Infinity.
    """

    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {str(key): json_safe(val) for key, val in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(val) for val in value]
    return value


def write_json_nolock(json_file, content):
    """
    Write a python dictionary as a JSON file.

    Given:
        json_file       JSON filename to write
        content         python dictionary

    Returns:
        True    JSON file written
        False   failed to write the JSON file

    WARNING: This function does NOT lock.  The caller should lock as needed.
    """

    # setup
    #
    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    # validate args
    #
    if not isinstance(content, dict):
        fail(me, 'content arg is not a python dictionary')
        return False

    # write JSON file
    #
    try:
        with open(json_file, mode="w", encoding="utf-8") as json_fp:
            json_fp.write(json.dumps(json_safe(content), ensure_ascii=True, indent=4, sort_keys=True))
            json_fp.write('\n')

            # NOTE: We explicitly manage the close because we just did a write
            #       and we want to catch the case where a write buffer may have
            #       not been fully flushed to the file.
            #
            try:
                json_fp.close()

            except OSError as errcode:
                fail(me, f'failed to close: {json_file} failed: <<{errcode}>>')
                return False

    except OSError as errcode:
        fail(me, f'open for writing: {json_file} failed: <<{errcode}>>')
        return False

    debug(f'{me}: end: wrote: {json_file}')
    return True


def read_json_file_nolock(json_file):
    """
    Return the contents of a JSON file as a python dictionary

    Given:
        json_file   JSON file to read

    Returns:
        != None     JSON file contents as a python dictionary
        None        unable to read JSON file

    WARNING: This function does NOT lock.  The caller should lock as needed.
    """

    # setup
    #
    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    # try to read JSON contents
    #
    try:
        with open(json_file, 'r', encoding='utf-8') as j_fp:
            try:
                content = json.load(j_fp)
            except json.JSONDecodeError:
                return fail(me, f'invalid JSON in file: {json_file}')
            except UnicodeDecodeError:
                return fail(me, f'invalid Unicode data in file: {json_file}')

    except OSError as errcode:
        return fail(me, f'cannot open JSON in: {json_file} failed: <<{errcode}>>')

    if not isinstance(content, dict):
        return fail(me, f'JSON file does not hold an object: {json_file}')

    debug(f'{me}: end: return python dictionary for JSON file: {json_file}')
    return content


def format_float(value):
    """
    Format a float for CSV output.

    repr() gives the shortest string that round-trips, so output is byte stable.
    Non-finite values are written as "nan".
    """

    if isinstance(value, float):
        if not math.isfinite(value):
            return "nan"
        return repr(value)
    return str(value)


def write_csv_nolock(csv_file, header, rows):
    """
    Write a CSV file with a fixed header.

    Given:
        csv_file    CSV filename to write
        header      list of column names
        rows        iterable of row lists, one value per column

    Returns:
        True    CSV file written
        False   failed to write the CSV file

    WARNING: This function does NOT lock.  The caller should lock as needed.
    """

    # setup
    #
    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    try:
        with open(csv_file, mode="w", encoding="utf-8", newline='') as csv_fp:
            writer = csv.writer(csv_fp, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                if len(row) != len(header):
                    fail(me, f'row has {len(row)} values, header has {len(header)}: {csv_file}')
                    return False
                writer.writerow([format_float(value) for value in row])

    except OSError as errcode:
        fail(me, f'open for writing: {csv_file} failed: <<{errcode}>>')
        return False

    debug(f'{me}: end: wrote: {csv_file}')
    return True


def sha256_file(filename):
    """
    Compute the SHA256 hash as a ASCII HEX digest string.

        - Avoid character encoding and line-ending conversion issues.
        - Sequentially read it block by block and update the hash for each block.
        - Use readinto() to avoid buffer churning.

    Given:
        filename    path to a file to SHA256 hash

    Returns:
        None ==> filename does not exist, or
                 filename is not readable
        != None ==> SHA256 hash as a ASCII HEX digest string
    """

    # setup
    #
    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    # prep to SHA256 hash
    #
    h  = hashlib.sha256()
    b  = bytearray(SHA256_BUFSIZE)
    mv = memoryview(b)

    # SHA256 hash in chunks
    #
    try:
        with open(filename, 'rb', buffering=0) as f:
            while n := f.readinto(mv):
                h.update(mv[:n])

    except OSError as errcode:
        caution(me, f'cannot open file: {filename} for SHA256 hashing failed: <<{errcode}>>')
        return None

    hexdigest = h.hexdigest()
    debug(f'{me}: end: SHA256: {hexdigest}')
    return hexdigest
