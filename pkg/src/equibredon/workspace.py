"""JSON workspace documents: parsing, cross-reference resolution, serialization.

A workspace names groups, complexes, actions, functors, coefficient systems
and bibundles; later sections refer to earlier ones by name.  Entries are
built lazily and cached, so each name resolves to exactly one object.
"""

import json

from .abelian import AbHom, FGAbelianGroup
from .coeff import CoefficientSystem, build_rep_system, constant_system, orbit_system, pullback
from .errors import EquiError, ValidationError
from .fundcat import EdgeStep, FundObject, Relabel, Twist, build_presentation, induced_functor, make_twist
from .gcomplex import SimplicialComplex, validate_gcomplex
from .groups import FiniteGroup, GroupHom, cyclic_group, direct_product, permutation_group
from .intmat import IntMatrix
from .morita import Bibundle, EquivariantFunctor, bibundle_from_functor

FORMAT = 1
SECTIONS = ("groups", "complexes", "actions", "functors", "systems", "bibundles")


def parse_text(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError("PARSE_ERROR", f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return doc


def dump_document(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def value_from_entry(entry):
    """Abelian group from {"free_rank", "torsion"} or {"generators", "relations"}."""
    if isinstance(entry, dict) and "generators" in entry:
        n = entry["generators"]
        rels = entry.get("relations", [])
        return FGAbelianGroup(n, IntMatrix(len(rels), n, rels))
    if isinstance(entry, dict):
        return FGAbelianGroup.from_invariants(entry.get("free_rank", 0), entry.get("torsion", []))
    raise ValidationError("BAD_VALUE", f"cannot read an abelian group from {entry!r}")


def value_to_entry(group):
    return {"generators": group.generator_count, "relations": group.relations.to_lists()}


class Workspace:
    def __init__(self, doc, subdivide=False):
        if not isinstance(doc, dict):
            raise ValidationError("PARSE_ERROR", "workspace must be a JSON object")
        if doc.get("format") != FORMAT:
            raise ValidationError("BAD_FORMAT", f"expected format {FORMAT}, found {doc.get('format')!r}")
        unknown = sorted(set(doc) - set(SECTIONS) - {"format"})
        if unknown:
            raise ValidationError("PARSE_ERROR", f"unknown section {unknown[0]!r}")
        self.raw = {sec: dict(doc.get(sec, {})) for sec in SECTIONS}
        self.subdivide = subdivide
        self._cache = {sec: {} for sec in SECTIONS}
        self._presentations = {}

    @classmethod
    def from_text(cls, text, subdivide=False):
        return cls(parse_text(text), subdivide=subdivide)

    @classmethod
    def from_file(cls, path, subdivide=False):
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read(), subdivide=subdivide)

    def to_document(self):
        doc = {"format": FORMAT}
        for sec in SECTIONS:
            if self.raw[sec]:
                doc[sec] = {k: self.raw[sec][k] for k in sorted(self.raw[sec])}
        return doc

    def serialize(self):
        return dump_document(self.to_document())

    def names(self, section):
        return sorted(self.raw[section])

    def _entry(self, section, name):
        if name not in self.raw[section]:
            raise ValidationError("UNKNOWN_NAME", f"no entry {name!r} in {section}")
        return self.raw[section][name]

    def _get(self, section, name, build):
        cache = self._cache[section]
        if name not in cache:
            try:
                cache[name] = build(self._entry(section, name))
            except EquiError as exc:
                if not exc.message.startswith(f"{section}."):
                    exc.message = f"{section}.{name}: {exc.message}"
                    exc.args = (f"{exc.code}: {exc.message}",)
                raise
            except (KeyError, TypeError, IndexError, ValueError) as exc:
                raise ValidationError("PARSE_ERROR", f"{section}.{name}: malformed entry ({exc!r})") from None
        return cache[name]

    # -- groups, complexes, actions -------------------------------------------------------

    def group(self, name):
        return self._get("groups", name, lambda e: self._build_group(name, e))

    def _build_group(self, name, e):
        if "cyclic" in e:
            return cyclic_group(int(e["cyclic"]), name=name)
        if "product" in e:
            a, b = e["product"]
            return direct_product(self.group(a), self.group(b), name=name)
        if "table" in e:
            return FiniteGroup(e["table"], name=name)
        if "permutations" in e:
            return permutation_group(e["permutations"], e.get("degree"), name=name)[0]
        raise ValidationError("PARSE_ERROR", "group needs one of cyclic, product, table, permutations")

    def complex(self, name):
        def build(e):
            names = list(e["vertices"])
            if len(set(names)) != len(names):
                raise ValidationError("DUPLICATE_NAME", "vertex names must be unique")
            index = {v: i for i, v in enumerate(names)}
            maximal = [[self._vertex(index, v) for v in s] for s in e["maximal"]]
            return SimplicialComplex.from_maximal(maximal, vertex_count=len(names), names=names)

        return self._get("complexes", name, build)

    @staticmethod
    def _vertex(index, v):
        if v not in index:
            raise ValidationError("UNKNOWN_NAME", f"unknown vertex {v!r}")
        return index[v]

    def action(self, name):
        return self._get("actions", name, self._build_action)

    def _build_action(self, e):
        G = self.group(e["group"])
        K = self.complex(e["complex"])
        index = {v: i for i, v in enumerate(K.names)}
        gens = {}
        for g, images in e.get("generators", {}).items():
            g = int(g)
            if not 0 <= g < G.order:
                raise ValidationError("NOT_HOMOMORPHIC", f"element {g} is not in the group")
            gens[g] = tuple(self._vertex(index, v) for v in images)
        perms = close_action(G, gens, K.vertex_count)
        return validate_gcomplex(G, K, perms, subdivide=self.subdivide)

    def presentation(self, action_name):
        if action_name not in self._presentations:
            self._presentations[action_name] = build_presentation(self.action(action_name))
        return self._presentations[action_name]

    def vertex_index(self, action_name, v):
        X = self.action(action_name)
        return self._vertex({n: i for i, n in enumerate(X.complex.names)}, v)

    def subgroup(self, action_name, elements):
        return self.action(action_name).group.subgroup(elements)

    # -- functors, systems, bibundles -----------------------------------------------------------

    def functor(self, name):
        def build(e):
            X, Y = self.action(e["source"]), self.action(e["target"])
            hom = GroupHom(X.group, Y.group, list(e["group_map"]))
            vm = e["vertex_map"]
            ynames = {n: i for i, n in enumerate(Y.complex.names)}
            vmap = [self._vertex(ynames, vm[n]) for n in X.complex.names]
            return EquivariantFunctor(X, Y, hom, vmap)

        return self._get("functors", name, build)

    def system_action(self, name):
        """Name of the action a system lives on."""
        e = self._entry("systems", name)
        if e.get("kind") == "pullback":
            return self._entry("functors", e["functor"])["source"]
        return e["action"]

    def system(self, name):
        return self._get("systems", name, lambda e: self._build_system(name, e))

    def _build_system(self, name, e):
        kind = e.get("kind", "explicit")
        if kind == "pullback":
            F = self.functor(e["functor"])
            fe = self._entry("functors", e["functor"])
            A = self.system(e["system"])
            if self.system_action(e["system"]) != fe["target"]:
                raise ValidationError("TYPE_MISMATCH", "pulled-back system does not live on the functor target")
            return pullback(induced_functor(F, self.presentation(fe["source"]), A.presentation), A)
        act = e["action"]
        P = self.presentation(act)
        if kind == "constant":
            return constant_system(P, value_from_entry(e.get("value", {"free_rank": 1})))
        if kind == "orbit":
            obj = FundObject(self.vertex_index(act, e["vertex"]), self.subgroup(act, e["subgroup"]))
            if not P.has_object(obj):
                raise ValidationError("TYPE_MISMATCH", f"{e['vertex']} is not fixed by {e['subgroup']}")
            return orbit_system(P, obj, value_from_entry(e.get("value", {"free_rank": 1})))
        if kind == "rep":
            return build_rep_system(P)
        if kind == "explicit":
            values = {}
            for item in e.get("values", []):
                obj = FundObject(self.vertex_index(act, item["vertex"]), self.subgroup(act, item["subgroup"]))
                values[obj] = value_from_entry(item["value"])
            actions = {}
            for item in e.get("arrows", []):
                a = self._generator(act, item)
                if a not in P.generators:
                    raise ValidationError("TYPE_MISMATCH", f"{item} is not a generator")
                rows = item["matrix"]
                src, tgt = values.get(a.target), values.get(a.source)
                n_src = src.generator_count if src else 0
                n_tgt = tgt.generator_count if tgt else 0
                actions[a] = AbHom(
                    src or FGAbelianGroup.zero(), tgt or FGAbelianGroup.zero(), IntMatrix(n_tgt, n_src, rows)
                )
            return CoefficientSystem(P, values, actions)
        raise ValidationError("PARSE_ERROR", f"unknown system kind {kind!r}")

    def _generator(self, act, item):
        X = self.action(act)
        H = self.subgroup(act, item["subgroup"])
        if "edge" in item:
            v, w = (self.vertex_index(act, x) for x in item["edge"])
            return EdgeStep(v, w, H)
        if "relabel" in item:
            return Relabel(self.vertex_index(act, item["relabel"]), H, self.subgroup(act, item["larger"]))
        if "twist" in item:
            return make_twist(X, int(item["twist"]), self.vertex_index(act, item["vertex"]), H)
        raise ValidationError("PARSE_ERROR", "arrow needs one of edge, relabel, twist")

    def bibundle(self, name):
        def build(e):
            if "functor" in e:
                return bibundle_from_functor(self.functor(e["functor"]))
            X, Y, Z = self.action(e["left"]), self.action(e["right"]), self.action(e["total"])
            xi = {n: i for i, n in enumerate(X.complex.names)}
            yi = {n: i for i, n in enumerate(Y.complex.names)}
            lam = [self._vertex(xi, e["lambda"][n]) for n in Z.complex.names]
            rho = [self._vertex(yi, e["rho"][n]) for n in Z.complex.names]
            return Bibundle(X, Y, Z, lam, rho)

        return self._get("bibundles", name, build)

    def bibundle_sides(self, name):
        """(left action name, right action name) of a bibundle entry."""
        e = self._entry("bibundles", name)
        if "functor" in e:
            fe = self._entry("functors", e["functor"])
            return fe["source"], fe["target"]
        return e["left"], e["right"]

    def validate_all(self):
        """Build every entry; returns report lines."""
        lines = []
        for name in self.names("groups"):
            G = self.group(name)
            lines.append(f"group {name}: order {G.order}")
        for name in self.names("complexes"):
            K = self.complex(name)
            lines.append(f"complex {name}: {K.vertex_count} vertices, {len(K.simplices)} simplices, dim {K.dim}")
        for name in self.names("actions"):
            X = self.action(name)
            note = "admissible"
            if X.subdivisions:
                note += f" after {X.subdivisions} subdivision" + ("s" if X.subdivisions > 1 else "")
            lines.append(f"action {name}: {note}")
        for name in self.names("functors"):
            self.functor(name)
            lines.append(f"functor {name}: equivariant")
        for name in self.names("systems"):
            A = self.system(name)
            lines.append(f"system {name}: valid, {len(A.nonzero_objects())} nonzero objects")
        for name in self.names("bibundles"):
            self.bibundle(name)
            lines.append(f"bibundle {name}: well formed")
        return lines

    def add_system(self, name, entry):
        if name in self.raw["systems"]:
            raise ValidationError("DUPLICATE_NAME", f"system {name!r} already exists")
        self.raw["systems"][name] = entry
        self._cache["systems"].pop(name, None)


def close_action(G, gens, vertex_count):
    """Extend permutations given on some elements to the whole group.

    Raises NOT_HOMOMORPHIC when the data is inconsistent or does not
    generate the group.
    """
    ident = tuple(range(vertex_count))
    for g, p in gens.items():
        if sorted(p) != list(ident):
            raise ValidationError("NOT_HOMOMORPHIC", f"images of element {g} are not a permutation")
    perms = {G.identity: ident}
    if G.identity in gens and gens[G.identity] != ident:
        raise ValidationError("NOT_HOMOMORPHIC", "identity must act trivially")
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for s, ps in sorted(gens.items()):
                b = G.mul[a][s]
                q = tuple(perms[a][ps[v]] for v in range(vertex_count))
                if b in perms:
                    if perms[b] != q:
                        raise ValidationError("NOT_HOMOMORPHIC", f"element {b} gets two different permutations")
                else:
                    perms[b] = q
                    nxt.append(b)
        frontier = nxt
    for g, p in gens.items():
        if perms[g] != p:
            raise ValidationError("NOT_HOMOMORPHIC", f"element {g} gets two different permutations")
    if len(perms) != G.order:
        raise ValidationError("NOT_HOMOMORPHIC", "the given elements do not generate the group")
    return [perms[g] for g in range(G.order)]


def system_to_entry(A, action_name):
    """Explicit workspace entry for a system (nonzero values and their arrows)."""
    X = A.presentation.X
    name = X.complex.name
    values = []
    for o in A.presentation.objects:
        v = A.value(o)
        if v.generator_count:
            values.append({"vertex": name(o.vertex), "subgroup": list(o.subgroup.elements), "value": value_to_entry(v)})
    arrows = []
    for a in A.presentation.generators:
        f = A.action(a)
        if not f.source.generator_count or not f.target.generator_count:
            continue
        item = {"subgroup": list(a.subgroup.elements), "matrix": f.matrix.to_lists()}
        if isinstance(a, EdgeStep):
            item["edge"] = [name(a.v), name(a.w)]
        elif isinstance(a, Relabel):
            item["relabel"] = name(a.v)
            item["larger"] = list(a.larger.elements)
        elif isinstance(a, Twist):
            item["twist"] = a.g
            item["vertex"] = name(a.v)
        arrows.append(item)
    return {"action": action_name, "kind": "explicit", "values": values, "arrows": arrows}
