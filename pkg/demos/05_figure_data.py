"""Produce the plot data behind the four stock figures.

Each bundle carries curve samples, the diagonal, cobweb segments, the full
iterate sequence, fixed points and boundaries, serialized as JSON plus a CSV
pair per series.  Point any plotting tool at the CSVs; nothing here renders
images.
"""

import json
from pathlib import Path

from gjsmap import figure_bundle, write_bundle

out = Path("figure_data")
for name in ("fig1", "fig2", "fig3", "fig4"):
    bundle = figure_bundle(name)
    files = write_bundle(bundle, out)
    print(f"{name}: wrote {len(files)} files")
    for series, report in bundle.reports:
        flags = []
        if report.truncated_divergence:
            flags.append("orbit diverged")
        if report.truncated_window:
            flags.append("trace left the window")
        print(
            f"  series {series!r}: x0 = {report.x0}, {len(report.iterates) - 1} "
            f"iterations, {len(report.cobweb_segments)} segments"
            + (f" ({'; '.join(flags)})" if flags else "")
        )

print("\nfiles under", out.resolve())
sample = json.loads((out / "fig3_a.json").read_text())
print("fig3 guide lines:", sample["guide_lines"])
print("fig3 orbit:", sample["iterates"])
