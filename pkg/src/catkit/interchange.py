"""JSON interchange for categories, functors, structure blocks, and
completion results.

The category format:

    {"name": "...",
     "objects": ["a", "b"],
     "morphisms": [{"id": "f", "src": "a", "dst": "b"}, ...],
     "identities": {"a": "id_a"},          # optional
     "composition": [["f", "g", "fg"], ...]}

Identities omitted from the document are synthesized with label
``id_<object>``; composites where either factor is an identity are inferred
from the unit laws.  Every other composable pair must be listed.
"""
from __future__ import annotations

from typing import Any

from .core import FinCat, Functor, fincat, functor
from .errors import (
    DanglingReference,
    IllTypedComposite,
    MalformedInput,
    MissingComposite,
    MissingIdentity,
    UnitLawViolation,
)


def _fresh(label: str, taken: set[str]) -> str:
    while label in taken:
        label += "'"
    return label


def validate_category(doc: dict[str, Any]) -> FinCat:
    """Parse and fully validate a category document.

    Raises a CategoryValidationError subclass with a JSON pointer into the
    document on the first offence.
    """
    if not isinstance(doc, dict):
        raise MalformedInput("category document must be an object")
    name = doc.get("name", "unnamed")
    raw_objects = doc.get("objects")
    if not isinstance(raw_objects, list) or not all(isinstance(o, str) for o in raw_objects):
        raise MalformedInput("objects must be a list of labels", pointer="/objects")

    # de-duplicate labels, first occurrence wins
    objects: list[str] = []
    for o in raw_objects:
        if o not in objects:
            objects.append(o)
    obj_index = {o: i for i, o in enumerate(objects)}

    raw_mors = doc.get("morphisms", [])
    if not isinstance(raw_mors, list):
        raise MalformedInput("morphisms must be a list", pointer="/morphisms")

    labels: list[str] = []
    srcs: list[int] = []
    dsts: list[int] = []
    mor_index: dict[str, int] = {}
    for k, entry in enumerate(raw_mors):
        ptr = f"/morphisms/{k}"
        if not isinstance(entry, dict) or not {"id", "src", "dst"} <= set(entry):
            raise MalformedInput("morphism entries need id/src/dst", pointer=ptr)
        mid, s, d = entry["id"], entry["src"], entry["dst"]
        if s not in obj_index:
            raise DanglingReference(f"unknown object {s!r}", pointer=f"{ptr}/src")
        if d not in obj_index:
            raise DanglingReference(f"unknown object {d!r}", pointer=f"{ptr}/dst")
        if mid in mor_index:
            prev = mor_index[mid]
            if srcs[prev] == obj_index[s] and dsts[prev] == obj_index[d]:
                continue  # exact duplicate entry, drop it
            raise DanglingReference(
                f"morphism id {mid!r} re-declared with different endpoints", pointer=ptr
            )
        mor_index[mid] = len(labels)
        labels.append(mid)
        srcs.append(obj_index[s])
        dsts.append(obj_index[d])

    # identities: explicit assignments first, then synthesis
    identity: list[int | None] = [None] * len(objects)
    declared = doc.get("identities", {})
    if not isinstance(declared, dict):
        raise MalformedInput("identities must be an object", pointer="/identities")
    for obj_label, mid in declared.items():
        ptr = f"/identities/{obj_label}"
        if obj_label not in obj_index:
            raise DanglingReference(f"unknown object {obj_label!r}", pointer=ptr)
        x = obj_index[obj_label]
        if mid in mor_index:
            f = mor_index[mid]
            if srcs[f] != x or dsts[f] != x:
                raise MissingIdentity(
                    f"identity of {obj_label!r} must be an endomorphism on it", pointer=ptr
                )
        else:
            f = len(labels)
            mor_index[mid] = f
            labels.append(mid)
            srcs.append(x)
            dsts.append(x)
        identity[x] = mor_index[mid]
    for x, lbl in enumerate(objects):
        if identity[x] is None:
            mid = _fresh(f"id_{lbl}", set(mor_index))
            mor_index[mid] = len(labels)
            labels.append(mid)
            srcs.append(x)
            dsts.append(x)
            identity[x] = mor_index[mid]

    # composition: declared triples, then unit-law inference
    comp: dict[tuple[int, int], int] = {}
    raw_comp = doc.get("composition", [])
    if not isinstance(raw_comp, list):
        raise MalformedInput("composition must be a list of triples", pointer="/composition")
    for k, triple in enumerate(raw_comp):
        ptr = f"/composition/{k}"
        if not (isinstance(triple, list) and len(triple) == 3):
            raise MalformedInput("composition entries are [f, g, fg] triples", pointer=ptr)
        ids = []
        for mid in triple:
            if mid not in mor_index:
                raise DanglingReference(f"unknown morphism {mid!r}", pointer=ptr)
            ids.append(mor_index[mid])
        f, g, fg = ids
        if dsts[f] != srcs[g]:
            raise IllTypedComposite(
                f"{triple[0]!r} then {triple[1]!r} is not composable", pointer=ptr
            )
        if srcs[fg] != srcs[f] or dsts[fg] != dsts[g]:
            raise IllTypedComposite(
                f"composite {triple[2]!r} has the wrong endpoints", pointer=ptr
            )
        if (f, g) in comp and comp[(f, g)] != fg:
            raise IllTypedComposite(
                f"conflicting composite for ({triple[0]!r}, {triple[1]!r})", pointer=ptr
            )
        comp[(f, g)] = fg

    ident_set = set(identity)
    for f in range(len(labels)):
        for g in range(len(labels)):
            if dsts[f] != srcs[g]:
                continue
            expected = None
            if f in ident_set and identity[srcs[g]] == f:
                expected = g
            elif g in ident_set and identity[dsts[f]] == g:
                expected = f
            if expected is None:
                if (f, g) not in comp:
                    raise MissingComposite(
                        f"composite of {labels[f]!r} then {labels[g]!r} is not declared",
                        pointer="/composition",
                    )
                continue
            if (f, g) in comp and comp[(f, g)] != expected:
                raise UnitLawViolation(
                    f"({labels[f]}, {labels[g]}, {labels[comp[(f, g)]]}): unit law forces "
                    f"{labels[expected]}",
                    pointer="/composition",
                )
            comp[(f, g)] = expected

    return fincat(name, objects, labels, srcs, dsts, [i for i in identity if i is not None], comp)


def category_to_json(C: FinCat) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "name": C.name,
        "objects": list(C.objects),
        "morphisms": [
            {"id": C.mor_labels[f], "src": C.objects[C.mor_src[f]], "dst": C.objects[C.mor_dst[f]]}
            for f in range(C.n_morphisms)
        ],
        "identities": {C.objects[x]: C.mor_labels[C.identity[x]] for x in range(C.n_objects)},
        "composition": [],
    }
    ident = set(C.identity)
    for f in range(C.n_morphisms):
        for g in range(C.n_morphisms):
            fg = C.comp_table[f][g]
            if fg is None or f in ident or g in ident:
                continue
            doc["composition"].append([C.mor_labels[f], C.mor_labels[g], C.mor_labels[fg]])
    return doc


def functor_from_json(doc: dict[str, Any], categories: dict[str, FinCat]) -> Functor:
    """Resolve a functor document against named categories."""
    if not isinstance(doc, dict):
        raise MalformedInput("functor document must be an object")
    for key in ("source", "target", "on_objects", "on_morphisms"):
        if key not in doc:
            raise MalformedInput(f"functor document lacks {key!r}", pointer=f"/{key}")
    if doc["source"] not in categories:
        raise DanglingReference(f"unknown category {doc['source']!r}", pointer="/source")
    if doc["target"] not in categories:
        raise DanglingReference(f"unknown category {doc['target']!r}", pointer="/target")
    C, D = categories[doc["source"]], categories[doc["target"]]
    obj_map = []
    for x, lbl in enumerate(C.objects):
        img = doc["on_objects"].get(lbl)
        if img is None:
            raise MalformedInput(f"no image for object {lbl!r}", pointer="/on_objects")
        if img not in D.objects:
            raise DanglingReference(f"unknown target object {img!r}", pointer=f"/on_objects/{lbl}")
        obj_map.append(D.objects.index(img))
    mor_map = []
    for f, lbl in enumerate(C.mor_labels):
        img = doc["on_morphisms"].get(lbl)
        if img is None:
            if C.is_identity(f):
                mor_map.append(D.identity[obj_map[C.mor_src[f]]])
                continue
            raise MalformedInput(f"no image for morphism {lbl!r}", pointer="/on_morphisms")
        if img not in D.mor_labels:
            raise DanglingReference(
                f"unknown target morphism {img!r}", pointer=f"/on_morphisms/{lbl}"
            )
        mor_map.append(D.mor_labels.index(img))
    return functor(C, D, obj_map, mor_map, name=doc.get("name", ""))


def functor_to_json(F: Functor) -> dict[str, Any]:
    C, D = F.source, F.target
    return {
        "name": F.name,
        "source": C.name,
        "target": D.name,
        "on_objects": {C.objects[x]: D.objects[F.obj_map[x]] for x in range(C.n_objects)},
        "on_morphisms": {
            C.mor_labels[f]: D.mor_labels[F.mor_map[f]] for f in range(C.n_morphisms)
        },
    }


# ---------------------------------------------------------------------------
# structure blocks


def _obj_ref(C: FinCat, label: Any, pointer: str) -> int:
    if not isinstance(label, str) or label not in C.objects:
        raise DanglingReference(f"unknown object {label!r}", pointer=pointer)
    return C.object_index(label)


def _mor_ref(C: FinCat, label: Any, pointer: str) -> int:
    if not isinstance(label, str) or label not in C.mor_labels:
        raise DanglingReference(f"unknown morphism {label!r}", pointer=pointer)
    return C.morphism_index(label)


def structure_to_json(C: FinCat, bag: dict[str, Any]) -> dict[str, Any]:
    """JSON blocks for a witness bag, ready to merge into the category's
    document.  Finite-limit witnesses live under "structure"; exponentials,
    the classifier, and the parameterized N are top-level blocks.
    """
    o, m = (lambda i: C.objects[i]), (lambda i: C.mor_labels[i])
    out: dict[str, Any] = {}
    block: dict[str, Any] = {}
    if "terminal" in bag:
        block["terminal"] = o(bag["terminal"].t)
    if "products" in bag:
        block["binproducts"] = [
            {"x1": o(w.x1), "x2": o(w.x2), "apex": o(w.apex), "pi1": m(w.pi1), "pi2": m(w.pi2)}
            for _, w in sorted(bag["products"].items())
        ]
    if "equalizers" in bag:
        block["equalizers"] = [
            {"f": m(w.f), "g": m(w.g), "obj": o(w.obj), "arrow": m(w.arrow)}
            for _, w in sorted(bag["equalizers"].items())
        ]
    if "pullbacks" in bag:
        block["pullbacks"] = [
            {"f": m(w.f), "g": m(w.g), "apex": o(w.apex), "p1": m(w.p1), "p2": m(w.p2)}
            for _, w in sorted(bag["pullbacks"].items())
        ]
    if block:
        out["structure"] = block
    if "exponentials" in bag:
        out["exponentials"] = [
            {"base": o(w.x), "target": o(w.y), "obj": o(w.obj), "ev": m(w.ev)}
            for _, w in sorted(bag["exponentials"].items())
        ]
    if "classifier" in bag:
        w = bag["classifier"]
        out["subobject_classifier"] = {
            "omega": o(w.omega),
            "tau": m(w.tau),
            "chi": {m(mono): m(chi) for mono, chi in sorted(w.chi.items())},
        }
    if "pnno" in bag:
        w = bag["pnno"]
        out["pnno"] = {"N": o(w.N), "z": m(w.z), "s": m(w.s)}
    return out


def structure_from_json(doc: dict[str, Any], C: FinCat) -> dict[str, Any]:
    """Parse whatever structure blocks a category document carries into a
    witness bag.  Reference shape is checked here; semantic validity is the
    caller's job."""
    from .classifier import SubobjectClassifierW
    from .exponentials import ExponentialW
    from .limits import BinProductW, ChosenTerminal, EqualizerW, PullbackW
    from .nno import PNNOW

    bag: dict[str, Any] = {}
    block = doc.get("structure", {})
    if not isinstance(block, dict):
        raise MalformedInput("structure must be an object", pointer="/structure")
    if "terminal" in block:
        bag["terminal"] = ChosenTerminal(_obj_ref(C, block["terminal"], "/structure/terminal"))
    if "binproducts" in block:
        table = {}
        for i, e in enumerate(block["binproducts"]):
            p = f"/structure/binproducts/{i}"
            w = BinProductW(
                _obj_ref(C, e.get("x1"), p), _obj_ref(C, e.get("x2"), p),
                _obj_ref(C, e.get("apex"), p),
                _mor_ref(C, e.get("pi1"), p), _mor_ref(C, e.get("pi2"), p),
            )
            table[(w.x1, w.x2)] = w
        bag["products"] = table
    if "equalizers" in block:
        table = {}
        for i, e in enumerate(block["equalizers"]):
            p = f"/structure/equalizers/{i}"
            w = EqualizerW(
                _mor_ref(C, e.get("f"), p), _mor_ref(C, e.get("g"), p),
                _obj_ref(C, e.get("obj"), p), _mor_ref(C, e.get("arrow"), p),
            )
            table[(w.f, w.g)] = w
        bag["equalizers"] = table
    if "pullbacks" in block:
        table = {}
        for i, e in enumerate(block["pullbacks"]):
            p = f"/structure/pullbacks/{i}"
            w = PullbackW(
                _mor_ref(C, e.get("f"), p), _mor_ref(C, e.get("g"), p),
                _obj_ref(C, e.get("apex"), p),
                _mor_ref(C, e.get("p1"), p), _mor_ref(C, e.get("p2"), p),
            )
            table[(w.f, w.g)] = w
        bag["pullbacks"] = table
    if "exponentials" in doc:
        table = {}
        for i, e in enumerate(doc["exponentials"]):
            p = f"/exponentials/{i}"
            w = ExponentialW(
                _obj_ref(C, e.get("base"), p), _obj_ref(C, e.get("target"), p),
                _obj_ref(C, e.get("obj"), p), _mor_ref(C, e.get("ev"), p),
            )
            table[(w.x, w.y)] = w
        bag["exponentials"] = table
    if "subobject_classifier" in doc:
        e = doc["subobject_classifier"]
        p = "/subobject_classifier"
        chi_raw = e.get("chi", {})
        if not isinstance(chi_raw, dict):
            raise MalformedInput("chi must be an object", pointer=f"{p}/chi")
        bag["classifier"] = SubobjectClassifierW(
            _obj_ref(C, e.get("omega"), p),
            _mor_ref(C, e.get("tau"), p),
            {_mor_ref(C, k, f"{p}/chi"): _mor_ref(C, v, f"{p}/chi") for k, v in chi_raw.items()},
        )
    if "pnno" in doc:
        e = doc["pnno"]
        bag["pnno"] = PNNOW(
            _obj_ref(C, e.get("N"), "/pnno"),
            _mor_ref(C, e.get("z"), "/pnno"),
            _mor_ref(C, e.get("s"), "/pnno"),
        )
    return bag
