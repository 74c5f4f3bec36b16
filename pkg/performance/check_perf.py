import csv
import os

from stirling_gautschi import identities
from stirling_gautschi.core import InterpPoint

from . import perf_utils


def enclosure_perf(kind, x, policy, stdout_print):
    """
    Computes time taken to enclose one mismatch at x.

    Returns a tuple:
    [
        x(float):         the abscissa
        time_taken(dict): the time it took to enclose the mismatch.
                          keys:
                             'cpu': CPU time, 'time.process_time()'
                             'real': Real time, 'time.perf_counter()'
    ]
    """
    time_taken = {}
    with perf_utils.measure_time(f"{kind} at x={x:g}, took", stdout_print, time_taken):
        if kind == "iota":
            identities.iota_enclosure(InterpPoint(x, 0.5), policy)
        elif kind == "m":
            identities.m_enclosure(0.5, x, policy)
        else:
            identities.mhat_enclosure(0.5, InterpPoint(x, 0.5), policy)
    return x, time_taken


def pi_perf(x, target_width, stdout_print):
    time_taken = {}
    with perf_utils.measure_time(f"pi at x={x:g}, took", stdout_print, time_taken):
        identities.pi_enclosure(x, target_width)
    return x, time_taken


def ladder_perf(samples, policy, stdout_print):
    """Time one ladder over 0, 1, ..., n - 1 against n separate enclosures"""
    count = len(samples)
    ladder, single = {}, {}
    with perf_utils.measure_time(
        f"ladder of {count} rungs, took", stdout_print, ladder
    ):
        identities.iota_ladder(0.0, 0.5, count, policy)
    with perf_utils.measure_time(
        f"{count} separate enclosures, took", stdout_print, single
    ):
        for j in range(count):
            identities.iota_enclosure(InterpPoint(j, 0.5), policy)
    return {"ladder": ladder, "single": single}


def scan_perf(bound, x_max, target_width, workers, stdout_print):
    scanner = perf_utils.scanner(target_width, workers)
    grid = perf_utils.scan_grid(x_max)
    time_taken = {}
    try:
        with perf_utils.measure_time(
            f"scanning {bound} over {grid.describe()}, took", stdout_print, time_taken
        ):
            report = scanner.scan_bound(bound, grid)
    finally:
        scanner.executor.shutdown()
    time_taken["points"] = report.points_checked
    return time_taken


def measure_enclosures(samples, target_width, stdout_print):
    policy = perf_utils.policy(target_width)
    result = {}
    for kind in ("iota", "m", "mhat"):
        result[kind] = dict(
            enclosure_perf(kind, x, policy, stdout_print) for x in samples
        )
    return result


def main():
    parser = perf_utils.configure_argument_parser()

    args = parser.parse_args()
    metric = args.metric
    samples = perf_utils.logspace_samples(args.x_max, args.points_number)
    csv_filename = args.csv_filename
    stdout_print = csv_filename is None

    rows = []
    for i in range(args.test_iterations):
        print(f"Starting {metric} measurement number {i} ...\n")
        if metric == "enclosures":
            result = measure_enclosures(samples, args.target_width, stdout_print)
            for kind, timings in result.items():
                stats = perf_utils.summarize([t["real"] for t in timings.values()])
                print(f"{kind}: {stats}")
                rows += [
                    [i, kind, x, t["cpu"], t["real"]] for x, t in timings.items()
                ]
        elif metric == "pi":
            timings = dict(
                pi_perf(x, args.target_width, stdout_print) for x in samples
            )
            print(f"pi: {perf_utils.summarize([t['real'] for t in timings.values()])}")
            rows += [[i, "pi", x, t["cpu"], t["real"]] for x, t in timings.items()]
        elif metric == "ladder":
            count = min(args.points_number, int(args.x_max))
            result = ladder_perf(
                range(count), perf_utils.policy(args.target_width), stdout_print
            )
            speedup = result["single"]["real"] / result["ladder"]["real"]
            print(f"ladder speedup over separate enclosures: {speedup:.1f}x")
            for name, t in result.items():
                rows.append([i, name, count, t["cpu"], t["real"]])
        else:
            t = scan_perf(
                args.bound, args.x_max, args.target_width, args.workers, stdout_print
            )
            print(f"{t['points'] / t['real']:.1f} points/s")
            rows.append([i, args.bound, t["points"], t["cpu"], t["real"]])

    if csv_filename:
        with open(csv_filename, mode="a+", newline="") as csv_file:
            writer = csv.writer(csv_file, lineterminator="\n")
            if os.stat(csv_filename).st_size == 0:
                writer.writerow(
                    ["metric", "test_id", "measure", "argument", "cpu_time", "real_time"]
                )
            writer.writerows([[metric, *row] for row in rows])


if __name__ == "__main__":
    main()
