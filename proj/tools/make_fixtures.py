#!/usr/bin/env python3
"""Regenerate the JSON fixtures in fixtures/.

Complexes are written as {"vertices": [...], "facets": [[...], ...]}; the
order of "vertices" is the sign-determining vertex order.  Joins, star
deletions and stellar subdivisions are computed on facet lists here so the
fixtures do not depend on the library they are used to test.
"""

import itertools
import json
import pathlib
import sys


def maximal(faces):
    faces = {frozenset(f) for f in faces}
    return [f for f in faces if not any(f < g for g in faces)]


def complex_json(vertices, facets):
    rank = {v: i for i, v in enumerate(vertices)}
    fs = [sorted(f, key=rank.get) for f in maximal(facets)]
    fs.sort(key=lambda f: [rank[v] for v in f])
    return {"vertices": list(vertices), "facets": fs}


def join(a, b):
    return [set(x) | set(y) for x in a for y in b]


def star_delete(facets, sigma):
    sigma = frozenset(sigma)
    out = []
    for f in facets:
        f = frozenset(f)
        if sigma <= f:
            out.extend(f - {v} for v in sigma)
        else:
            out.append(f)
    return maximal(out)


def cochain(J, simplex_terms, p):
    return {
        "J": list(J),
        "p": p,
        "terms": [{"simplex": list(s), "coeff": str(c)} for s, c in simplex_terms],
    }


def points(*labels):
    return [{v} for v in labels]


def main(out_dir):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def write(name, data):
        (out / name).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")

    # Small spheres.
    write("s0.json", complex_json(["1", "2"], points("1", "2")))
    write("c4.json", complex_json(list("1234"), [{"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "1"}]))
    write("c5.json", complex_json(list("12345"), [{str(i), str(i % 5 + 1)} for i in range(1, 6)]))
    octa = [set(c) for c in itertools.product(["1", "2"], ["3", "4"], ["5", "6"])]
    write("octahedron.json", complex_json(list("123456"), octa))

    # Six vertices, nine edges: the triple product <a1, a2, a3> with
    # non-trivial indeterminacy.
    fig1_edges = ["36", "35", "52", "24", "26", "61", "14", "15", "64"]
    write("fig1.json", complex_json(list("123456"), [set(e) for e in fig1_edges]))
    write(
        "fig1-classes.json",
        {
            "classes": [
                cochain(["1", "2"], [(["1"], 1)], 0),
                cochain(["3", "4"], [(["3"], 1)], 0),
                cochain(["5", "6"], [(["5"], 1)], 0),
            ]
        },
    )

    # The join construction for three 0-dimensional classes.
    eb = out / "example-b"
    eb.mkdir(exist_ok=True)
    (eb / "k1.json").write_text(json.dumps(complex_json(["1", "2"], points("1", "2")), indent=2, sort_keys=True) + "\n")
    (eb / "k2.json").write_text(
        json.dumps(complex_json(list("3456"), [{"3", "4"}, {"4", "5"}, {"3", "5"}, {"6"}]), indent=2, sort_keys=True)
        + "\n"
    )
    (eb / "k3.json").write_text(json.dumps(complex_json(["7", "8"], points("7", "8")), indent=2, sort_keys=True) + "\n")
    write(
        "example-b/spec.json",
        {
            "factors": ["k1.json", "k2.json", "k3.json"],
            "classes": [
                cochain(["1", "2"], [(["1"], 1)], 0),
                cochain(list("3456"), [(["3"], 1), (["4"], 1), (["5"], 1)], 0),
                cochain(["7", "8"], [(["7"], 1)], 0),
            ],
        },
    )

    # Edge contraction {1,4} -> 1 onto a join construction.
    hollow = [{"1", "2"}, {"2", "3"}, {"1", "3"}]
    up = join(join(hollow, points("5", "6")), points("7", "8"))
    up = star_delete(star_delete(up, {"1", "3", "6"}), {"5", "8"})
    up_vertices = ["1", "2", "3", "5", "6", "7", "8"]
    write("example-a-up.json", complex_json(up_vertices, up))
    c4 = [{"1", "3"}, {"3", "2"}, {"2", "4"}, {"4", "1"}]
    down = join(join(c4, points("5", "6")), points("7", "8"))
    down = star_delete(star_delete(down, {"1", "3", "6"}), {"5", "8"})
    down_vertices = ["1", "4", "2", "3", "5", "6", "7", "8"]
    write("example-a.json", complex_json(down_vertices, down))
    image = {v: v for v in down_vertices}
    image["4"] = "1"
    write(
        "example-a-map.json",
        {
            "source": complex_json(down_vertices, down),
            "target": complex_json(up_vertices, up),
            "image": image,
        },
    )
    write(
        "example-a-up-system.json",
        {
            "n": 3,
            "entries": [
                {"i": 1, "k": 1, "cochain": cochain(["1", "2", "3"], [(["1", "3"], 1)], 1)},
                {"i": 2, "k": 2, "cochain": cochain(["5", "6"], [(["5"], 1)], 0)},
                {"i": 3, "k": 3, "cochain": cochain(["7", "8"], [(["7"], 1)], 0)},
                {"i": 1, "k": 2, "cochain": cochain(["1", "2", "3", "5", "6"], [(["1", "3"], -1)], 1)},
                {"i": 2, "k": 3, "cochain": cochain(["5", "6", "7", "8"], [(["5"], -1)], 0)},
            ],
        },
    )
    write(
        "example-a-classes.json",
        {
            "classes": [
                cochain(["1", "4", "2", "3"], [(["1", "3"], 1)], 1),
                cochain(["5", "6"], [(["5"], 1)], 0),
                cochain(["7", "8"], [(["7"], 1)], 0),
            ]
        },
    )

    # A 6-vertex real projective plane as the first factor: a torsion class.
    rp2 = ["034", "045", "015", "135", "134", "124", "245", "235", "023", "012"]
    rp = out / "rp2"
    rp.mkdir(exist_ok=True)
    (rp / "k1.json").write_text(
        json.dumps(complex_json(list("012345"), [set(f) for f in rp2]), indent=2, sort_keys=True) + "\n"
    )
    (rp / "k2.json").write_text(json.dumps(complex_json(["6", "7"], points("6", "7")), indent=2, sort_keys=True) + "\n")
    (rp / "k3.json").write_text(json.dumps(complex_json(["8", "9"], points("8", "9")), indent=2, sort_keys=True) + "\n")
    write(
        "rp2/spec.json",
        {
            "factors": ["k1.json", "k2.json", "k3.json"],
            "classes": [
                cochain(list("012345"), [(["0", "1", "2"], 1)], 2),
                cochain(["6", "7"], [(["6"], 1)], 0),
                cochain(["8", "9"], [(["8"], 1)], 0),
            ],
        },
    )

    # Four-fold product with non-trivial indeterminacy: the join of four
    # copies of S^0 star-deleted at seven edges.
    labels = ["1", "1'", "2", "2'", "3", "3'", "4", "4'"]
    k = [set()]
    for i in range(1, 5):
        k = join(k, points(str(i), f"{i}'"))
    for a, b in [("1", "2'"), ("1", "3'"), ("2", "3'"), ("2", "4'"), ("3", "4'"), ("1'", "2'"), ("1'", "3'")]:
        k = star_delete(k, {a, b})
    write("massey4.json", complex_json(labels, k))
    write(
        "massey4-classes.json",
        {"classes": [cochain([str(i), f"{i}'"], [([str(i)], 1)], 0) for i in range(1, 5)]},
    )

    # Building set of the star graph with centre 1 on [4].
    star = [[1], [2], [3], [4]] + [
        sorted(s)
        for r in range(2, 5)
        for s in itertools.combinations(range(1, 5), r)
        if 1 in s
    ]
    write("star4-building-set.json", {"ground": 4, "sets": star})


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "fixtures")
