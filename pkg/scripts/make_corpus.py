"""Regenerate the bundled example corpus under src/eulercat/corpus/."""

import json
from pathlib import Path

from eulercat import builders
from eulercat.fileio import category_to_data, diagram_to_data, functor_to_data
from eulercat.constructions import Diagram

OUT = Path(__file__).resolve().parent.parent / "src" / "eulercat" / "corpus"


def write(name, data):
    (OUT / name).write_text(json.dumps(data, indent=2) + "\n")


def matrix(rows):
    return {"rows": len(rows), "cols": len(rows[0]), "entries": rows}


def main():
    OUT.mkdir(exist_ok=True)
    c1 = builders.constant_composition([[3, 2], [3, 2]], ["a", "b"])
    c2, include, collapse = builders.add_isomorphic_copies(c1, {"b2": "b"})
    term = builders.terminal()
    pbc = builders.poset(["a", "b", "c"], [("a", "b"), ("a", "c")])
    cod = builders.codiscrete(["x0", "x1"])
    z2 = builders.cyclic_group(2)
    d2 = builders.discrete(["u", "v"])
    cats = {"c1": c1, "c2": c2, "terminal": term, "poset_pbc": pbc,
            "b_codiscrete2": cod, "z2": z2, "discrete2": d2}
    for name, c in cats.items():
        write(f"{name}.json", category_to_data(c))

    write("ex1_matrix.json", matrix([[3, 2], [3, 2]]))
    write("ex2_matrix.json", matrix([[3, 2, 2]] * 3))
    write("poset_matrix.json", matrix([[1, 1, 1], [0, 1, 0], [0, 0, 1]]))
    write("identity2_matrix.json", matrix([[1, 0], [0, 1]]))

    write("c1_to_c2.json", functor_to_data(include, "c1.json", "c2.json"))
    write("c2_to_c1.json", functor_to_data(collapse, "c2.json", "c1.json"))
    initial = builders.point_functor(pbc, "a", term)
    bang = builders.terminal_functor(pbc, term)
    write("initial_point.json", functor_to_data(initial, "terminal.json", "poset_pbc.json"))
    write("poset_to_terminal.json", functor_to_data(bang, "poset_pbc.json", "terminal.json"))

    ref = {id(c): f"{n}.json" for n, c in cats.items()}

    def diagram(name, index, fibers, arrows):
        d = Diagram(index, fibers, arrows)
        write(name, diagram_to_data(d, ref[id(index)], {a: ref[id(f)] for a, f in fibers.items()}))

    # EX3: a -> terminal, b -> two-object codiscrete, every arrow constant.
    ex3 = {"a": term, "b": cod}
    anchor = {"a": "*", "b": "x0"}
    diagram("ex3_diagram.json", c1, ex3,
            {m.id: builders.constant_functor(ex3[m.src], ex3[m.dst], anchor[m.dst])
             for m in c1.morphisms if m.id not in c1.identities.values()})

    def over_pbc(name, fibers, anchor):
        diagram(name, pbc, fibers,
                {m.id: builders.constant_functor(fibers[m.src], fibers[m.dst], anchor[m.dst])
                 for m in pbc.morphisms if m.id not in pbc.identities.values()})

    over_pbc("poset_terminal_diagram.json", {a: term for a in "abc"}, {"b": "*", "c": "*"})
    over_pbc("poset_mixed_diagram.json", {"a": term, "b": d2, "c": z2}, {"b": "u", "c": "*"})
    over_pbc("poset_z2_diagram.json", {"a": z2, "b": z2, "c": d2}, {"b": "*", "c": "v"})


if __name__ == "__main__":
    main()
