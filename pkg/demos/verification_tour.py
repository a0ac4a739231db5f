"""Run the whole verification registry on one category and narrate the result.

Every structural law the package knows how to test runs against the chosen
(diagram, rank, d), printing one line per check with instance counts; laws
whose hypotheses need a larger d are reported as n/a rather than skipped
silently.  Use --out to persist the byte-reproducible JSON report.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from dcluster.verify import load_context, report_to_json, run_checks


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--diagram", default="A")
    ap.add_argument("--rank", type=int, default=3)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--prime", type=int, default=101)
    ap.add_argument("--out", help="write the JSON report here")
    args = ap.parse_args()

    ctx = load_context(args.diagram, args.rank, args.d, prime=args.prime)
    oc = ctx.oc
    print("category: %s_%d, d = %d, over F_%d  (%d indecomposables)"
          % (args.diagram, args.rank, args.d, args.prime, len(ctx.objects)))

    report, timings = run_checks(ctx)
    for entry in report["checks"]:
        mark = {"pass": "ok ", "fail": "BAD", "n/a": "-- "}[entry["status"]]
        note = entry.get("reason", "")
        print("  [%s] %-28s %7d instances  %6.2fs  %s"
              % (mark, entry["id"], entry["instances"],
                 timings[entry["id"]], note))
        if entry["status"] == "fail":
            print("        counterexample: %r" % (entry["counterexample"],))

    s = report["summary"]
    print("summary: %d pass, %d fail, %d n/a" % (s["pass"], s["fail"], s["n/a"]))
    if args.out:
        Path(args.out).write_text(report_to_json(report))
        print("wrote %s" % args.out)


if __name__ == "__main__":
    main()
