"""Named scenarios, reports and diagrams, the same path the command line takes.

Run: python demos/06_scenarios.py [output-dir]
"""

import sys
from pathlib import Path

from causalcover.report import Scenario, default_expectations, run_scenario, to_json, validate
from causalcover.svg import emit_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo-output")
out.mkdir(parents=True, exist_ok=True)

for name in ("cone-cover-closure", "punctured-reflectivity", "sphere-trapped", "criterion-certificate"):
    s = Scenario(name, seed=0, expect=default_expectations(name))
    report = run_scenario(s)
    validate(report)
    (out / f"{name}.json").write_text(to_json(report) + "\n")
    status = "ok" if report["expectations"]["passed"] else "MISMATCH"
    print(f"{name:24s} {status:8s} {report['wall_clock_seconds']:.2f}s")
    for key, v in sorted(report["verdicts"].items())[:4]:
        print(f"    {key}: {v['value']}  [{v['provenance']}]")
    if name in ("cone-cover-closure", "punctured-reflectivity"):
        (out / f"{name}.svg").write_text(emit_svg(s, report))

print(f"\nreports and diagrams written to {out}/")
print("equivalent command: causalcover verify cone --expect default --svg cone.svg --out cone.json")
