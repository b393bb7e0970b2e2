"""Regenerate the shipped fixtures under src/geo4/fixtures.

    python3 tools/regen_fixtures.py [--check]

Recipes come from the planner over [1,15]^2. Words and groups are built from the
library constructors; their expected values are written here by hand so the
verify suites compare against independent claims rather than recomputed ones.
With --check nothing is written and the exit code is 1 if any file would change.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from geo4 import certificates as C  # noqa: E402
from geo4 import lefschetz as L  # noqa: E402
from geo4 import mcg  # noqa: E402
from geo4.dsl import format_group, format_word, print_recipe  # noqa: E402
from geo4.geography.plan import Realized, plan  # noqa: E402
from geo4.geography.scan import Bounds  # noqa: E402
from geo4.grouppres import FpGroup  # noqa: E402
from geo4.lefschetz import DX26_RELATORS  # noqa: E402

OUT = ROOT / "src" / "geo4" / "fixtures"
RECIPE_BOX = "1:15"


def recipe_files() -> dict[str, str]:
    out = {}
    for p in Bounds.parse(RECIPE_BOX).points():
        r = plan(p)
        if isinstance(r, Realized):
            out[f"recipes/{r.recipe_id.replace('/', '__')}.recipe"] = print_recipe(r.recipe)
    return out


def words() -> list[dict]:
    out = []
    for g in (2, 3, 4, 5):
        out.append({"name": f"chain_g{g}", "surface": "chain", "genus": g, "word": format_word(mcg.chain_word(g)),
                    "expect": "-I", "anchor": "hyperelliptic involution acts as -I"})
        out.append({"name": f"chain_sq_g{g}", "surface": "chain", "genus": g,
                    "word": format_word(mcg.chain_word(g) * 2), "expect": "I", "hyperelliptic": True,
                    "chars": [4 * g + 8, -4 * g - 4],
                    "anchor": "X_g: (t1...t2g+1^2...t1)^2 = 1, e = 4g+8, sigma = -4g-4"})
    for n in (1, 2):
        out.append({"name": f"E{n}", "surface": "torus", "genus": 1,
                    "word": format_word(mcg.word("a", "b") * (6 * n)), "expect": "I", "hyperelliptic": True,
                    "chars": [12 * n, -8 * n], "anchor": "E(n) = (t_a t_b)^(6n)"})
    for g in (2, 3):
        out.append({"name": f"W{g}", "surface": "standard", "genus": g, "word": format_word(L.w_word(g)),
                    "expect": "I", "hyperelliptic": True, "chars": [4 * g + 8, -4 * g - 4],
                    "anchor": "W_g = A_g t1^(2g+2) t3^(2g+2)"})
        out.append({"name": f"V{g}", "surface": "standard", "genus": g, "word": format_word(L.v_word(g)),
                    "expect": "I", "anchor": "V_g = A^phi (t_a t_b t_c t_d)^(2g+2) r(A^phi)^-1 r"})
    for k in (1, 2, 3):
        out.append({"name": f"V2,{2 * k}", "surface": "standard", "genus": 2, "word": format_word(L.v_word(2, k)),
                    "expect": "I", "hyperelliptic": True, "chars": [36 - 2 * k, -24 + 2 * k],
                    "anchor": "V_{g,2k} after 2k lantern substitutions, e(V_{2,2k}) = 36-2k"})
    return out


def groups() -> list[tuple[str, FpGroup, list[int], object, str]]:
    out = [("half_surgery", C.cyclic_surgery_group(2), [2], 2, "1/2 surgery on a telescoping triple gives Z2")]
    for n in range(7):
        out.append((f"cyclic_1_over_{n}", C.cyclic_surgery_group(n), [n], n or None,
                    "1/n surgery gives Z/n"))
    for k in (1, 2, 3):
        out.append((f"sigma_minus3_k{k}", C.sigma_minus3_group(k), [1], 1, "Luttinger schedule on N_k"))
    out.append(("r14_amalgam", C.r14_group(), [2], 2, "M(1,1/2) glued to Z''(1,1)"))
    for i, G in enumerate(C.r16_groups()):
        out.append((f"r16_amalgam_v{i:02d}", G, [2], 2, "(T^2 x S^2) # 4 CPbar^2 glued to Z''(1/2,1)"))
    out.append(("r25_complement", C.r25_group(), [1], 1, "M(1,1) glued to Z''(1,1) minus a parallel surface"))
    for i, G in enumerate(C.r27_groups()):
        out.append((f"r27_complement_v{i:02d}", G, [1], 1, "glued to Z''(1,1) minus a parallel surface"))
    out.append(("zprime_complement", C.zprime_group(), [1], 1, "X - H glued to Z' - Sigma"))
    for i, G in enumerate(C.r615_groups()):
        out.append((f"r615_complement_v{i:02d}", G, [1], 1, "two Luttinger surgeries on the torus base"))
    gens = [f"c{i}" for i in range(1, 6)]
    rels = ["*".join(f"{g}^{x}" for g, x in zip(gens, row) if x) for row in DX26_RELATORS]
    rels += [f"[{a},{b}]" for i, a in enumerate(gens) for b in gens[i + 1:]]
    out.append(("dx26_h1", FpGroup.from_strings(gens, rels), [1], 1, "H1(DX_{2,6}) = 0"))
    return out


def group_files() -> dict[str, str]:
    files, index = {}, []
    for name, G, divisors, order, anchor in groups():
        fn = f"{name}.group"
        files[f"groups/{fn}"] = format_group(G) + "\n"
        index.append({"name": name, "file": fn, "divisors": divisors, "order": order, "anchor": anchor})
    files["groups/index.json"] = json.dumps(index, indent=1) + "\n"
    return files


def all_files() -> dict[str, str]:
    files = recipe_files()
    files["words/words.json"] = json.dumps(words(), indent=1) + "\n"
    files.update(group_files())
    return files


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args(argv)
    files = all_files()
    stale = [p for p in (OUT / "recipes").glob("*.recipe") if f"recipes/{p.name}" not in files]
    changed = [k for k, v in files.items() if not (OUT / k).exists() or (OUT / k).read_text() != v]
    if args.check:
        for k in changed:
            print(f"stale: {k}")
        for p in stale:
            print(f"extra: {p.name}")
        return 1 if changed or stale else 0
    for p in stale:
        p.unlink()
    for k in changed:
        (OUT / k).parent.mkdir(parents=True, exist_ok=True)
        (OUT / k).write_text(files[k])
    print(f"{len(files)} files, {len(changed)} written, {len(stale)} removed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
