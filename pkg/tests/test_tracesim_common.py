#!/usr/bin/env python3
#
# test_tracesim_common.py - tests for error messages, logging setup, locking and file writers

"""
test_tracesim_common.py - tests for error messages, logging setup, locking and file writers
"""

# import modules
#
import math

# 3rd party imports
#
import pytest

# import the tracesim python utility code
#
# Sort the import list with: sort -d -u
#
from tracesim import \
        clear_last_errmsg, \
        return_last_errmsg, \
        setup_logger
from tracesim.tracesim_common import \
        OUT_DIR_LOCK_NAME, \
        caution, \
        fail, \
        format_float, \
        is_finite_number, \
        json_safe, \
        read_json_file_nolock, \
        set_last_errmsg, \
        sha256_file, \
        tracesim_dir_lock, \
        tracesim_dir_unlock, \
        write_csv_nolock, \
        write_json_nolock


def test_last_errmsg_round_trip():
    set_last_errmsg("something")
    assert return_last_errmsg() == "something"
    clear_last_errmsg()
    assert return_last_errmsg() == ""


def test_fail_and_caution_record_messages():
    assert fail("some_func", "went wrong") is None
    assert return_last_errmsg() == "ERROR: some_func: went wrong"
    caution("other_func", "look out")
    assert return_last_errmsg() == "Warning: other_func: look out"


@pytest.mark.parametrize("logtype", ["none", "stderr", "STDOUT", "bogus", None])
def test_setup_logger_accepts_any_logtype(logtype):
    setup_logger(logtype, "debug")
    setup_logger("none", "info")


@pytest.mark.parametrize("value, ok", [(1, True), (2.5, True), (math.inf, False), (math.nan, False),
                                       (True, False), ("3", False), (None, False)])
def test_is_finite_number(value, ok):
    assert is_finite_number(value) is ok


def test_json_safe_replaces_non_finite():
    assert json_safe({"a": math.nan, "b": [1.0, math.inf], 3: "x"}) == {"a": None, "b": [1.0, None], "3": "x"}


def test_write_and_read_json(tmp_path):
    path = tmp_path / "out.json"
    assert write_json_nolock(path, {"b": 1, "a": math.nan})
    assert path.read_text(encoding="utf-8") == '{\n    "a": null,\n    "b": 1\n}\n'
    assert read_json_file_nolock(path) == {"a": None, "b": 1}
    assert not write_json_nolock(path, [1, 2])


def test_read_json_rejects_bad_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert read_json_file_nolock(bad) is None
    array = tmp_path / "array.json"
    array.write_text("[1, 2]", encoding="utf-8")
    assert read_json_file_nolock(array) is None
    assert read_json_file_nolock(tmp_path / "missing.json") is None


def test_format_float():
    assert format_float(0.1) == "0.1"
    assert format_float(1.0) == "1.0"
    assert format_float(math.nan) == "nan"
    assert format_float(7) == "7"


def test_write_csv(tmp_path):
    path = tmp_path / "out.csv"
    assert write_csv_nolock(path, ["h", "probability"], [[1, 0.25], [2, 0.75]])
    assert path.read_text(encoding="utf-8") == "h,probability\n1,0.25\n2,0.75\n"
    assert not write_csv_nolock(path, ["h", "probability"], [[1]])


def test_sha256_file(tmp_path):
    path = tmp_path / "abc.txt"
    path.write_bytes(b"abc")
    assert sha256_file(path) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
    assert sha256_file(tmp_path / "missing") is None


def test_dir_lock_creates_directory(tmp_path):
    out_dir = tmp_path / "new" / "dir"
    lock = tracesim_dir_lock(out_dir)
    assert lock is not None
    assert lock.is_locked
    assert (out_dir / OUT_DIR_LOCK_NAME).exists()
    tracesim_dir_unlock()
    assert not lock.is_locked
    # unlocking twice is harmless
    tracesim_dir_unlock()
