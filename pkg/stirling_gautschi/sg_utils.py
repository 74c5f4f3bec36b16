import csv
import os
from contextlib import contextmanager
from tempfile import NamedTemporaryFile

import toml
from traitlets import Float, TraitError
from traitlets.config import Config


class UnitInterval(Float):
    """A float trait restricted to [0, 1]"""

    def validate(self, obj, value):
        f = super().validate(obj, value)
        if not 0 <= f <= 1:
            raise TraitError(
                f"The '{self.name}' trait of {type(obj).__name__} must lie in [0, 1], got {f!r}"
            )
        return f


class PositiveFloat(Float):
    """A finite float trait that must be strictly positive, such as a grid step"""

    def validate(self, obj, value):
        f = super().validate(obj, value)
        if not (0 < f < float("inf")):
            raise TraitError(
                f"The '{self.name}' trait of {type(obj).__name__} must be > 0, got {f!r}"
            )
        return f


def format_float(value):
    """17 significant digits, enough to round-trip any binary64"""
    return format(float(value), ".17g")


# the temp file is written first and then replaces the canonical path,
# so a reader never sees a partial report or figure


@contextmanager
def atomic_writing(path):
    """Write temp file before copying it into place

    Output is always LF-terminated, whatever the platform.
    """
    fileobj = NamedTemporaryFile(
        prefix=os.path.abspath(path) + "-tmp-", mode="w", delete=False, newline=""
    )
    try:
        with fileobj as f:
            yield f
        os.replace(fileobj.name, path)
    finally:
        try:
            os.unlink(fileobj.name)
        except FileNotFoundError:
            # already deleted by os.replace above
            pass


def write_csv(path, header, rows):
    """Write a header and rows of floats or strings as CSV"""
    with atomic_writing(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [format_float(v) if isinstance(v, float) else v for v in row]
            )


def persist_summary(file, summary_dict):
    with atomic_writing(file) as f:
        toml.dump(summary_dict, f)


def load_summary(file):
    with open(file, "r") as f:
        return toml.load(f)


def load_config(file):
    """Read a TOML file whose tables are configurable class names

    ``[GridScanner]`` with ``tolerance = 1e-12`` becomes
    ``c.GridScanner.tolerance = 1e-12``.
    """
    with open(file, "r") as f:
        data = toml.load(f)
    return Config(data)
