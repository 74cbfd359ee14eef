#!/usr/bin/env python3
"""Regenerates the golden documents from cell lists, independently of the C++ code."""
import itertools
import json
import pathlib

HERE = pathlib.Path(__file__).parent

STATES = ["w0", "w1", "w2", "w3"]
CELLS = {
    "a": [["w0", "w1"], ["w2", "w3"]],
    "b": [["w0"], ["w1", "w2"], ["w3"]],
}


def dump(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def canonical(states):
    return "+".join(sorted(states))


def cell_of(agent, w):
    return next(c for c in CELLS[agent] if w in c)


def structure(states, succ):
    return {
        "version": 1,
        "states": sorted(states),
        "agents": sorted(CELLS),
        "relations": {a: sorted([w, v] for w in states for v in succ[a][w]) for a in sorted(CELLS)},
    }


def fnv1a64(data):
    h = 0xCBF29CE484222325
    for byte in data:
        h ^= byte
        h = (h * 0x100000001B3) % (1 << 64)
    return "fnv1a64:%016x" % h


def gamma(agent):
    cells = CELLS[agent]
    out = []
    for k in range(1, len(cells) + 1):
        for combo in itertools.combinations(cells, k):
            out.append(sorted(s for c in combo for s in c))
    return out


def main():
    source_succ = {a: {w: cell_of(a, w) for w in STATES} for a in CELLS}
    source = dump(structure(STATES, source_succ))
    (HERE / "d1.json").write_text(source)

    succ = {a: dict(source_succ[a]) for a in CELLS}
    labels = []
    for j in sorted(CELLS):
        for e in gamma(j):
            for w in STATES:
                name = "cf:%s:%s:%s" % (j, w, canonical(e))
                labels.append({"state": name, "agent": j, "base": w, "event": canonical(e)})
                for i in CELLS:
                    succ[i][name] = e if (i == j and w in e) else cell_of(i, w)
    names = STATES + [l["state"] for l in labels]
    doc = structure(names, succ)
    doc["provenance"] = {
        "origin_hash": fnv1a64(source.encode()),
        "labels": sorted(labels, key=lambda l: l["state"]),
    }
    (HERE / "d1_counterfactual.json").write_text(dump(doc))

    # Decision documents: cells get `cell`, strict unions get `top`.
    def tables(cell, top):
        return {
            a: {
                "kind": "gamma",
                "table": {canonical(e): (cell[a] if e in CELLS[a] else top) for e in sorted(gamma(a), key=canonical)},
            }
            for a in sorted(CELLS)
        }

    agree = {"version": 1, "actions": ["x", "y"], "agents": tables({"a": "x", "b": "x"}, "x")}
    (HERE / "d1_decisions_agree.json").write_text(dump(agree))
    split = {"version": 1, "actions": ["0", "1", "2"], "agents": tables({"a": "1", "b": "2"}, "0")}
    (HERE / "d1_decisions_no_stp.json").write_text(dump(split))
    field = [canonical(c) for k in range(1, 5) for c in itertools.combinations(STATES, k)]
    power = {
        "version": 1,
        "actions": ["x", "y"],
        "agents": {a: {"kind": "field", "table": {e: "x" for e in sorted(field)}} for a in sorted(CELLS)},
    }
    (HERE / "d1_decisions_field.json").write_text(dump(power))


if __name__ == "__main__":
    main()
