from typing import Any, Iterable, List, Optional, Sequence

import os
import csv
import sys
import json

from netmimo.modules.log import getLogger

log = getLogger(__name__)


class OutputError(Exception):
    """Exception class for errors while reading or writing result files"""


def ensure_dir(path: str) -> str:
    """Create directory `path` (with parents) if needed, return it"""
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as e:
        raise OutputError(f"wasn't able to create directory '{path}': {e}") from e
    return path


def save_dict_to_json_file(d: dict, path: str):
    """Save dict to file in JSON format. Raise OutputError on failure"""
    try:
        with open(path, "w", encoding="utf-8") as file:
            json.dump(d, file, ensure_ascii=False, indent=4)
    except OSError as e:
        raise OutputError(f"while trying to save json file '{path}': {e}") from e
    log.verbose2("Saved %s", path)


def print_dict_as_json(d: dict):
    """Dump dictionary to stdout in JSON format"""
    json.dump(d, sys.stdout, ensure_ascii=False, indent=4)
    sys.stdout.write("\n")


def load_json_file(path: str):
    """
    Load JSON file. Raise OutputError if the file can't be read,
    ValueError (json.JSONDecodeError) if it isn't valid JSON.
    """
    try:
        with open(path, "rt", encoding="utf-8") as json_file:
            return json.load(json_file)
    except OSError as e:
        raise OutputError(f"while trying to load json file '{path}': {e}") from e


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]):
    """
    Write header + rows as RFC 4180 CSV (UTF-8, CRLF line ends, '.' decimal separator).
    """
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\r\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_csv_value(v) for v in row])
    except OSError as e:
        raise OutputError(f"while trying to write csv file '{path}': {e}") from e
    log.verbose2("Saved %s", path)


def read_csv(path: str) -> List[dict]:
    """Read CSV file with header row into list of dicts (values stay strings)"""
    try:
        with open(path, "rt", encoding="utf-8", newline="") as f:
            return list(csv.DictReader(f))
    except OSError as e:
        raise OutputError(f"while trying to read csv file '{path}': {e}") from e


def format_csv_value(value: Any) -> str:
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def none_on_bad_file(*path_components: str) -> Optional[str]:
    """
    If file exists and is read accessible,
    return path joined from path_components.

    Return None otherwise
    """

    if not path_components:
        return None

    path = os.path.join(*path_components)

    if not os.path.isfile(path):
        return None

    if not os.access(path, os.R_OK):
        return None

    return path


def none_on_bad_nonempty_file(*path_components: str) -> Optional[str]:
    """
    If file exists, read accessible and is not empty,
    return path joined from path_components.

    Return None otherwise
    """

    path = none_on_bad_file(*path_components)

    if path is None:
        return None

    if not os.path.getsize(path):
        return None

    return path
