"""Rebuild src/cohomolab/corpus/index.json, including golden report digests.

Golden digests are sha256 sums of the degree-2 oracle reports; the test suite
recomputes them.  Run from the repository root: python tools/build_index.py
"""
import json
import sys
from pathlib import Path

from cohomolab.corpus import action_from_data, digest, load_action, load_group
from cohomolab.linalg import FieldTag
from cohomolab.shapiro import brute_force_oracle

ROOT = Path(__file__).resolve().parents[1] / "src" / "cohomolab" / "corpus"
COHOMOLOGY = ["trivial", "C2", "C3", "C5", "C6", "S3", "D4", "Q8"]
CLASSIFY_ONLY = ["C2xS3", "S3xS3"]
EXPLICIT = {"S3": ["S3_mixed"], "D4": ["D4_vertices_diagonals"], "C6": ["C6_cosets"]}
FIELDS = ["q", "f2", "f3"]
GOLDEN_DEGREE = 2


def main() -> int:
    groups = {}
    for name in COHOMOLOGY + CLASSIFY_ONLY:
        entry = {"file": f"groups/{name}.json", "cohomology": name in COHOMOLOGY}
        if name in COHOMOLOGY:
            g = load_group(ROOT / entry["file"])
            acts = {}
            if g.order > 1:
                acts[f"{name}/conjugation"] = {"kind": "conjugation"}
            acts[f"{name}/regular"] = {"kind": "regular"}
            acts[f"{name}/trivial"] = {"kind": "trivial"}
            for a in EXPLICIT.get(name, []):
                acts[f"{name}/{a}"] = f"actions/{a}.json"
            entry["actions"] = acts
            golden = {}
            for aname, spec in acts.items():
                act = load_action(ROOT / spec, g) if isinstance(spec, str) else action_from_data(spec, g)
                for f in FIELDS:
                    rep = brute_force_oracle(act, FieldTag.parse(f), GOLDEN_DEGREE)
                    golden[f"{aname}@{f}"] = digest(rep.to_dict())
            entry["golden"] = golden
        groups[name] = entry
    index = {"golden_degree": GOLDEN_DEGREE, "groups": groups}
    (ROOT / "index.json").write_text(json.dumps(index, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
