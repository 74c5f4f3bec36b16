import argparse
import contextlib
import textwrap
import time

import numpy as np

from stirling_gautschi import GridScanner, GridSpec, TailPolicy


def configure_argument_parser():
    parser = argparse.ArgumentParser(
        description="Performance measurement utility",
        epilog=textwrap.dedent(
            """\
            Available measurements:
            - Enclosures:
                - iota
                - m
                - mhat
            - pi_enclosure along a range of x
            - Gautschi ladders against one summation per point
            - Grid scans of one bound
            """
        ),
        formatter_class=argparse.RawTextHelpFormatter,
    )

    parser.add_argument(
        "--measure",
        dest="metric",
        default="enclosures",
        choices=["enclosures", "pi", "ladder", "scan"],
        help=textwrap.dedent(
            """\
            What metric to measure. Available metrics:
            - enclosures
            - pi
            - ladder
            - scan
            If no metric is provided, it defaults to:
            --- %(default)s ---
            """
        ),
    )

    parser.add_argument(
        "--points",
        dest="points_number",
        type=int,
        default=50,
        help=textwrap.dedent(
            """\
            Number of sample abscissae; they are spread
            logarithmically over [1, --xmax].
            If no number is provided, it defaults to:
            --- %(default)s ---
            """
        ),
    )

    parser.add_argument(
        "--xmax",
        dest="x_max",
        type=float,
        default=1000.0,
        help=textwrap.dedent(
            """\
            Largest sample abscissa.
            If no value is provided, it defaults to:
            --- %(default)s ---
            """
        ),
    )

    parser.add_argument(
        "--width",
        dest="target_width",
        type=float,
        default=1e-10,
        help=textwrap.dedent(
            """\
            Requested enclosure width.
            If no value is provided, it defaults to:
            --- %(default)s ---
            """
        ),
    )

    parser.add_argument(
        "--bound",
        dest="bound",
        default="sg_upper_plus",
        help=textwrap.dedent(
            """\
            Bound scanned by the scan measurement.
            If no bound is provided, it defaults to:
            --- %(default)s ---
            """
        ),
    )

    parser.add_argument(
        "--workers",
        dest="workers",
        type=int,
        default=1,
        help=textwrap.dedent(
            """\
            Threads used by the grid scanner.
            If no number is provided, it defaults to:
            --- %(default)s ---
            """
        ),
    )

    parser.add_argument(
        "--iterations",
        dest="test_iterations",
        type=int,
        default=1,
        help=textwrap.dedent(
            """
            How many times to run the measurement.
            If no value is provided, it defaults to:
            --- %(default)s ---
            """
        ),
    )

    parser.add_argument(
        "--output",
        dest="csv_filename",
        help=textwrap.dedent(
            """
            The csv file name where the results will be appended.
            If no file is provided, the results will only be outputed to stdout.
            """
        ),
    )

    return parser


@contextlib.contextmanager
def measure_time(print_message, stdout_print, time_taken):
    real_time = time.perf_counter()
    process_time = time.process_time()
    yield
    real_time = time.perf_counter() - real_time
    cpu_time = time.process_time() - process_time
    if stdout_print:
        print(f"{print_message}")
        print(f"CPU time:      {cpu_time:.3f} s")
        print(f"REAL time:     {real_time:.3f} s")
    time_taken["cpu"] = cpu_time
    time_taken["real"] = real_time


def logspace_samples(x_max, points_number):
    """Distinct abscissae spread logarithmically over [1, x_max], with halves mixed in"""
    samples = np.logspace(0, np.log10(x_max), points_number)
    samples = np.round(samples * 2) / 2
    return [float(x) for x in np.unique(samples)]


def policy(target_width):
    return TailPolicy(target_width)


def scanner(target_width, workers):
    return GridScanner(target_width=target_width, workers=workers)


def scan_grid(x_max):
    return GridSpec(0.0, x_max, 1.0 / 16.0, 17)


def summarize(samples):
    """Median, mean and spread of a list of timings, in seconds"""
    values = np.asarray(samples, dtype=float)
    return {
        "n": int(values.size),
        "median": float(np.median(values)),
        "mean": float(values.mean()),
        "max": float(values.max()),
        "std": float(values.std()),
    }
