"""Bit-exact JSON serialization for every value the CLI touches.

Rationals travel as ``"p/q"`` strings (plain ``"p"`` when integral) and
``"inf"`` is the unique sentinel for infinite edge lengths, so parse and
serialize round-trip exactly.  Deck elements in files may be generator
words such as ``"a^-1 b"``, resolved against the manifold's named
generators, or explicit matrix-plus-translation objects.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .curve import INF, AbstractTropicalCurve, Edge
from .embedded import (
    EmbeddedEdgeData,
    ParametrizedTropicalCurve,
    ZeroCycle,
    zero_cycle,
)
from .errors import TroplinError
from .linalg import as_fraction, as_int, vector
from .manifold import (
    KIND_EUCLIDEAN,
    KIND_GENERAL,
    KIND_KLEIN,
    KIND_PRODUCT,
    KIND_TORUS,
    AffineQuotientManifold,
    DeckElement,
    TropicalForm,
    make_euclidean,
    make_klein,
    make_torus,
    product_with_line,
)
from .pairing import Block, GradedSpace


def frac_str(x) -> str:
    f = as_fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_frac(s) -> Fraction:
    return as_fraction(s)


def vector_json(v) -> list[str]:
    return [frac_str(x) for x in v]


def parse_vector(items) -> tuple:
    return vector(as_fraction(x) for x in items)


def length_json(length) -> str:
    return "inf" if length == INF else frac_str(length)


def parse_length(s):
    return INF if s == "inf" else as_fraction(s)


# ---------------------------------------------------------------------------
# Deck elements and manifolds


def deck_json(g: DeckElement) -> dict:
    return {
        "matrix": [list(row) for row in g.linear],
        "translation": vector_json(g.translation),
    }


def parse_deck(obj, manifold: AffineQuotientManifold | None = None) -> DeckElement:
    if isinstance(obj, str):
        if manifold is None:
            raise TroplinError("generator words need a manifold to resolve against")
        return manifold.deck_from_word(obj)
    if "word" in obj:
        if manifold is None:
            raise TroplinError("generator words need a manifold to resolve against")
        return manifold.deck_from_word(obj["word"])
    return DeckElement(
        tuple(tuple(int(e) for e in row) for row in obj["matrix"]),
        parse_vector(obj["translation"]),
    )


def manifold_json(M: AffineQuotientManifold) -> dict:
    doc = {
        "kind": M.kind,
        "dim": M.dim,
        "generators": [
            dict(name=name, **deck_json(g)) for name, g in zip(M.names, M.generators)
        ],
    }
    if M.kind == KIND_KLEIN and M.klein_params is not None:
        doc["klein"] = {"x0": frac_str(M.klein_params[0]), "y0": frac_str(M.klein_params[1])}
    if M.kind == KIND_PRODUCT and M.base is not None:
        doc["base"] = manifold_json(M.base)
    return doc


def parse_manifold(doc: dict) -> AffineQuotientManifold:
    kind = doc["kind"]
    if kind == KIND_EUCLIDEAN:
        return make_euclidean(int(doc["dim"]))
    if kind == KIND_TORUS:
        lattice = [parse_vector(g["translation"]) for g in doc["generators"]]
        return make_torus(lattice)
    if kind == KIND_KLEIN:
        params = doc.get("klein")
        if params is not None:
            return make_klein(parse_frac(params["x0"]), parse_frac(params["y0"]))
        b = next(g for g in doc["generators"] if g.get("name") == "b")
        a = next(g for g in doc["generators"] if g.get("name") == "a")
        return make_klein(parse_frac(b["translation"][0]), parse_frac(a["translation"][1]))
    if kind == KIND_PRODUCT:
        if "base" not in doc:
            raise TroplinError("product manifold document needs a base")
        return product_with_line(parse_manifold(doc["base"]))
    if kind == KIND_GENERAL:
        gens = tuple(parse_deck(g) for g in doc["generators"])
        names = tuple(
            g.get("name", f"g{i + 1}") for i, g in enumerate(doc["generators"])
        )
        return AffineQuotientManifold(int(doc["dim"]), gens, names, KIND_GENERAL)
    raise TroplinError(f"unknown manifold kind {kind!r}")


# ---------------------------------------------------------------------------
# Curves


def abstract_curve_json(curve: AbstractTropicalCurve) -> dict:
    edges = []
    for e in curve.edges:
        entry: dict = {"id": e.id, "tail": e.tail}
        if e.head is None:
            entry["boundary"] = True
        else:
            entry["head"] = e.head
        entry["length"] = length_json(e.length)
        edges.append(entry)
    return {"vertices": list(curve.vertices), "edges": edges}


def parse_abstract_curve(doc: dict) -> AbstractTropicalCurve:
    edges = []
    for e in doc["edges"]:
        head = None if e.get("boundary") else e["head"]
        edges.append(Edge(str(e["id"]), str(e["tail"]), head if head is None else str(head),
                          parse_length(e["length"])))
    return AbstractTropicalCurve(tuple(str(v) for v in doc["vertices"]), tuple(edges))


def parametrized_curve_json(h: ParametrizedTropicalCurve) -> dict:
    doc = abstract_curve_json(h.abstract)
    doc["manifold"] = manifold_json(h.manifold)
    doc["positions"] = {v: vector_json(pos) for v, pos in h.positions.items()}
    plus = []
    for e in h.abstract.edges:
        d = h.data(e.id)
        entry = {
            "id": e.id,
            "direction": list(d.direction),
            "weight": d.weight,
            "image_length": length_json(d.image_length),
        }
        if not d.deck.is_identity():
            entry["deck"] = deck_json(d.deck)
        plus.append(entry)
    doc["edges+"] = plus
    return doc


def parse_parametrized_curve(doc: dict) -> ParametrizedTropicalCurve:
    manifold = parse_manifold(doc["manifold"])
    abstract = parse_abstract_curve(doc)
    positions = {str(v): parse_vector(pos) for v, pos in doc["positions"].items()}
    data = {}
    for entry in doc["edges+"]:
        deck = entry.get("deck")
        data[str(entry["id"])] = EmbeddedEdgeData(
            tuple(int(c) for c in entry["direction"]),
            int(entry.get("weight", 1)),
            parse_length(entry["image_length"]),
            parse_deck(deck, manifold) if deck is not None
            else DeckElement(
                tuple(tuple(1 if i == j else 0 for j in range(manifold.dim))
                      for i in range(manifold.dim)),
                tuple([0] * manifold.dim),
            ),
        )
    return ParametrizedTropicalCurve(manifold, abstract, positions, data)


def is_parametrized_doc(doc: dict) -> bool:
    return "positions" in doc or "edges+" in doc


# ---------------------------------------------------------------------------
# Forms, cycles, graded spaces


def form_json(form: TropicalForm) -> dict:
    return {"dim": form.dim, "degree": form.degree, "coefficients": list(form.coefficients)}


def parse_form(doc: dict) -> TropicalForm:
    return TropicalForm(int(doc["dim"]), int(doc["degree"]),
                        tuple(int(c) for c in doc["coefficients"]))


def cycle_json(z: ZeroCycle) -> list[dict]:
    return [{"point": vector_json(p), "mult": m} for p, m in z.entries]


def parse_cycle(doc, manifold: AffineQuotientManifold) -> ZeroCycle:
    return zero_cycle(manifold, [(parse_vector(e["point"]), as_int(e["mult"])) for e in doc])


def graded_space_json(space: GradedSpace, vectors=()) -> dict:
    return {
        "blocks": [
            {"dimension": b.dimension, "sign": b.sign, "form": form_json(b.form)}
            for b in space.blocks
        ],
        "vectors": [vector_json(v) for v in vectors],
    }


def parse_graded_space(doc: dict) -> tuple[GradedSpace, list[tuple]]:
    blocks = tuple(
        Block(int(b["dimension"]), int(b["sign"]), parse_form(b["form"]))
        for b in doc["blocks"]
    )
    vectors = [parse_vector(v) for v in doc.get("vectors", [])]
    return GradedSpace(blocks), vectors


# ---------------------------------------------------------------------------
# Files


def load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(obj, path: str | None = None) -> str:
    text = json.dumps(obj, indent=2)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text
