"""Regenerate the JSON corpus under corpus/.

Usage: python scripts/make_corpus.py [output-dir]
"""

from __future__ import annotations

import sys
from pathlib import Path

from wfsw.probes import all_arrows, finab_upto, finset_upto
from wfsw.report import dumps


def finset_file(n: int) -> dict:
    S = finset_upto(n)
    objects = [{"id": f"s{len(A.data)}", "elements": list(A.data)} for A in S.objects]
    morphisms = []
    for f in all_arrows(S):
        a, b = len(f.dom.data), len(f.cod.data)
        morphisms.append({
            "id": f"f{a}{b}_" + "".join(map(str, f.data)),
            "dom": f"s{a}", "cod": f"s{b}",
            "map": {str(x): y for x, y in zip(f.dom.data, f.data)},
        })
    return {"flavor": "finset", "objects": objects, "morphisms": morphisms}


def finab_file(n: int) -> dict:
    Ab = finab_upto(n)
    ids = {A: k for k, A in Ab.object_names.items()}
    objects = [{"id": ids[A], "orders": list(A.data)} for A in Ab.objects]
    morphisms, count = [], {}
    for f in all_arrows(Ab):
        key = (ids[f.dom], ids[f.cod])
        k = count[key] = count.get(key, -1) + 1
        morphisms.append({"id": f"{key[0]}>{key[1]}#{k}", "dom": key[0], "cod": key[1],
                          "matrix": [list(row) for row in f.data]})
    return {"flavor": "finab", "objects": objects, "morphisms": morphisms}


TERMINAL = {
    "flavor": "table",
    "objects": [{"id": "*"}],
    "morphisms": [{"id": "id*", "dom": "*", "cod": "*", "identity": True}],
    "compose": [["id*", "id*", "id*"]],
}

# a two-object category with a missing composite, for the failure path of validate
BROKEN = {
    "flavor": "table",
    "objects": [{"id": "a"}, {"id": "b"}],
    "morphisms": [
        {"id": "1a", "dom": "a", "cod": "a", "identity": True},
        {"id": "1b", "dom": "b", "cod": "b", "identity": True},
        {"id": "f", "dom": "a", "cod": "b"},
    ],
    "compose": [["1a", "1a", "1a"], ["1b", "1b", "1b"], ["f", "1a", "f"]],
}

GEN = "f01_"  # the empty set into a point


def files() -> dict[str, dict]:
    out = {
        "terminal.json": TERMINAL,
        "broken_table.json": BROKEN,
        "finset_le2.json": finset_file(2),
        "finset_le3.json": finset_file(3),
        "finab_le4.json": finab_file(4),
        "finab_le8.json": finab_file(8),
        # probe sets
        "probes_finset_le2.json": {"category": "finset_le2.json", "all_arrows": True,
                                   "square_objects": ["s0", "s1", "s2"]},
        "probes_finset_le3.json": {"category": "finset_le3.json", "all_arrows": True,
                                   "square_objects": ["s0", "s1", "s2"]},
        "probes_finab_le4.json": {"category": "finab_le4.json", "all_arrows": True,
                                  "square_objects": ["Z0", "Z2", "Z3"]},
        "probes_finab_le8.json": {"category": "finab_le8.json", "all_arrows": True,
                                  "square_objects": ["Z0", "Z2", "Z3", "Z4"]},
        "probes_finset_small.json": {"category": "finset_le2.json",
                                     "arrows": ["f21_00", "f12_0", "f22_01"],
                                     "squares": [["f22_01", "f22_01", "f22_01", "f22_01"]],
                                     "triples": [["f12_0", "f21_00"]]},
        # small object argument
        "gens_point.json": {"category": "finset_le3.json", "generators": [GEN]},
        "garner_instance.json": {"category": "finset_le3.json", "generators": [GEN], "stages": 2},
        # factorizations
        "fact_split.json": {"kind": "split"},
        "fact_soa_point.json": {"kind": "soa", "generators": [GEN]},
        "gamma_soa_point.json": {"kind": "soa", "generators": [GEN],
                                 "family": {"objects": ["s0", "s1", "s2"], "include_left_factors": True}},
        "boxplus_split.json": {"kind": "split", "family": {"objects": ["Z0", "Z2", "Z3"]}},
        # weak factorization systems and model structures
        "wfs_split.json": {"left": "split_mono", "right": "split_epi", "factorization": "fact_split.json"},
        "wfs_finset.json": {"left": "injective", "right": "surjective", "factorization": "fact_soa_point.json"},
        "model_split.json": {"C": "split_mono", "F": "split_epi", "W": "all",
                             "fact_cof": "fact_split.json", "fact_triv": "fact_split.json"},
        "model_isos.json": {"C": "all", "F": "all", "W": "isos",
                            "fact_cof": "fact_split.json", "fact_triv": "fact_split.json"},
        "prop53_split.json": {"left": "split_mono", "right0": "split_epi", "W": "all",
                              "factorization": "fact_split.json"},
    }
    return out


def main(argv: list[str]) -> None:
    target = Path(argv[1]) if len(argv) > 1 else Path(__file__).resolve().parent.parent / "corpus"
    target.mkdir(parents=True, exist_ok=True)
    for name, data in files().items():
        (target / name).write_text(dumps(data), encoding="utf-8")


if __name__ == "__main__":
    main(sys.argv)
