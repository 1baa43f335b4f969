"""
Reports produced by the command line driver.
"""

from fractions import Fraction
import json

from colorama import Fore, Style
import numpy as np

from .exactla import Subspace
from .operators import format_rational
from .verdict import Verdict

EXIT_CODES = {"ok": 0, "parse": 2, "axiom": 3, "classification": 4, "internal": 5}


def plain(value):
    """
    Convert a value into JSON-compatible data with rationals as "p/q" strings.

    Subspaces become their dimension and ambient dimension, verdicts their
    dictionary form; tuples and arrays become lists.
    """
    if isinstance(value, Verdict):
        return plain(value.to_dict())
    if isinstance(value, Subspace):
        return {"dim": value.dim, "ambient_dim": value.ambient_dim}
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if hasattr(value, "to_dict"):
        return plain(value.to_dict())
    raise TypeError(f"Cannot report value {value!r}.")


class Report:
    """
    An ordered, deterministic report.

    Attributes:
        command (str): command name
        args (list): command arguments as given
        sections (dict): section name -> plain data, in insertion order
        failures (list): (category, message) in the order they were raised
    """

    def __init__(self, command, args=()):
        self.command = command
        self.args = list(args)
        self.sections = {}
        self.failures = []

    def add(self, name, data):
        self.sections[name] = plain(data)
        return self.sections[name]

    def fail(self, category, message):
        if category not in EXIT_CODES or category == "ok":
            raise ValueError(f"Unknown failure category {category!r}.")
        self.failures.append((category, message))

    def check(self, ok, category, message):
        "Record a failure of `category` unless `ok`."
        if not ok:
            self.fail(category, message)
        return bool(ok)

    @property
    def status(self):
        return self.failures[0][0] if self.failures else "ok"

    @property
    def exit_code(self):
        return EXIT_CODES[self.status]

    def to_dict(self):
        return {
            "command": self.command,
            "args": list(self.args),
            "status": self.status,
            "failures": [list(f) for f in self.failures],
            "sections": self.sections,
        }

    def to_machine(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_machine(cls, text):
        doc = json.loads(text)
        out = cls(doc["command"], doc["args"])
        out.sections = doc["sections"]
        out.failures = [tuple(f) for f in doc["failures"]]
        return out

    def to_human(self, color=True):
        def paint(s, c):
            return f"{c}{s}{Style.RESET_ALL}" if color else s

        lines = [paint(f"xmodlie {self.command} {' '.join(self.args)}".rstrip(), Style.BRIGHT)]
        for name, data in self.sections.items():
            lines.append(paint(f"[{name}]", Fore.CYAN))
            lines.extend(_human_lines(data, 1, paint))
        if self.failures:
            for category, message in self.failures:
                lines.append(paint(f"FAIL ({category}): {message}", Fore.RED))
        else:
            lines.append(paint("OK", Fore.GREEN))
        return "\n".join(lines) + "\n"


def _human_lines(data, depth, paint):
    pad = "  " * depth
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                yield f"{pad}{k}:"
                yield from _human_lines(v, depth + 1, paint)
            else:
                yield f"{pad}{k}: {_human_value(v, paint)}"
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                yield f"{pad}-"
                yield from _human_lines(v, depth + 1, paint)
            else:
                yield f"{pad}- {_human_value(v, paint)}"
    else:
        yield f"{pad}{_human_value(data, paint)}"


def _flat_list(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _human_value(v, paint):
    if v is True:
        return paint("true", Fore.GREEN)
    if v is False:
        return paint("false", Fore.RED)
    if isinstance(v, list):
        return "[" + ", ".join(str(x) for x in v) + "]"
    return str(v)
