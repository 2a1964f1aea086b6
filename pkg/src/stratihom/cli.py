"""JSON documents, verification suites, and the command line.

A complex travels as a JSON object: facets with face closure implied, a
filtration given by generators per level, and optional named perversities
(codimension functions or per-stratum tables).  Everything the package can
verify is packaged into suites that emit machine-parseable reports, one
JSON object per line, so a failing run pinpoints the degree and the ranks
that disagree.  All commands are pure functions of their inputs; repeated
runs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .blowup_cochains import (
    BlownUpIntersectionComplex,
    GlobalBlownUpComplex,
    blown_up_cohomology,
    blown_up_join_prediction,
    relative_decomposition_sides,
    restriction_surjectivity,
)
from .core_complex import (
    FilteredComplex,
    FullnessError,
    Simplex,
    StructuralError,
    boundary_faces,
    clot_join,
    clots,
    decompose,
    facet_closure,
    is_full,
    is_regular_simplex,
)
from .corpus import all_members, corpus_member
from .exact_algebra import (
    INTEGERS,
    HomologyResult,
    RingSpec,
    ZERO_GROUP,
    mat_vec,
)
from .extint import format_extint, parse_extint
from .intersection_chains import (
    Perversity,
    intersection_homology,
    lower_middle_perversity,
    residual_decomposition_check,
    top_perversity,
    upper_middle_perversity,
    zero_perversity,
)
from .products import (
    OrderedCochainComplex,
    blown_up_unit,
    class_cup,
    global_cup_vector,
    verify_blow_up_map,
)
from .subdivision import BlownUpComparison, SubdivisionMap, compare_blown_up


class DocumentError(ValueError):
    """Schema or content problem in a complex document, with the field
    that caused it."""


PRESETS = {
    "zero": zero_perversity,
    "top": top_perversity,
    "lower-middle": lower_middle_perversity,
    "upper-middle": upper_middle_perversity,
}


# -- documents ---------------------------------------------------------------


@dataclass(frozen=True)
class ParsedDocument:
    name: str
    complex: FilteredComplex
    perversities: dict[str, Perversity]
    raw_perversities: tuple[dict, ...]


def _need(cond: bool, where: str, msg: str) -> None:
    if not cond:
        raise DocumentError(f"{where}: {msg}")


def _read_simplex(raw, where: str) -> Simplex:
    _need(
        isinstance(raw, list)
        and bool(raw)
        and all(isinstance(v, int) and not isinstance(v, bool) for v in raw),
        where,
        "expected a nonempty list of integer vertex ids",
    )
    _need(len(set(raw)) == len(raw), where, f"repeated vertex in {raw}")
    return tuple(sorted(raw))


def parse_document(text: str) -> ParsedDocument:
    """Load a complex document, validating as the schema promises.

    The complex is the face closure of the facets; level l consists of
    the subcomplex generated by the listed simplices of all levels up to
    l, and everything else sits at level n.  Built this way the level map
    is automatically monotone, so the constructor's own check only fires
    on hand-made input.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"line {exc.lineno}: not valid JSON ({exc.msg})"
        ) from None
    _need(isinstance(doc, dict), "document", "expected a JSON object")
    name = doc.get("name", "unnamed")
    _need(isinstance(name, str), "name", "expected a string")
    n = doc.get("n")
    _need(
        isinstance(n, int) and not isinstance(n, bool) and n >= 0,
        "n",
        "expected a nonnegative integer",
    )

    raw_facets = doc.get("facets")
    _need(isinstance(raw_facets, list), "facets", "expected a list")
    _need(bool(raw_facets), "facets", "no facets: the empty complex")
    facets = [
        _read_simplex(f, f"facets[{i}]") for i, f in enumerate(raw_facets)
    ]
    closed = facet_closure(facets)

    raw_filt = doc.get("filtration", {})
    _need(
        isinstance(raw_filt, dict),
        "filtration",
        "expected an object keyed by level",
    )
    generators: dict[int, list[Simplex]] = {}
    for key, gens in raw_filt.items():
        try:
            level = int(key)
        except (TypeError, ValueError):
            raise DocumentError(
                f"filtration key {key!r}: not an integer level"
            ) from None
        _need(
            0 <= level <= n, f"filtration[{key}]", f"level outside 0..{n}"
        )
        _need(
            isinstance(gens, list),
            f"filtration[{key}]",
            "expected a list of simplices",
        )
        parsed = []
        for i, g in enumerate(gens):
            s = _read_simplex(g, f"filtration[{key}][{i}]")
            _need(
                s in closed,
                f"filtration[{key}][{i}]",
                f"simplex {list(s)} is not a face of any facet",
            )
            parsed.append(s)
        generators[level] = parsed

    level_of: dict[Simplex, int] = {}
    for level in sorted(generators):
        for s in facet_closure(generators[level]):
            level_of.setdefault(s, level)
    try:
        K = FilteredComplex(
            {s: level_of.get(s, n) for s in closed}, n
        )
    except StructuralError as exc:
        raise DocumentError(f"filtration: {exc}") from None

    raw_pervs = doc.get("perversities", [])
    _need(
        isinstance(raw_pervs, list), "perversities", "expected a list"
    )
    perversities: dict[str, Perversity] = {}
    for i, entry in enumerate(raw_pervs):
        where = f"perversities[{i}]"
        _need(isinstance(entry, dict), where, "expected an object")
        pname = entry.get("name")
        _need(
            isinstance(pname, str) and bool(pname),
            f"{where}.name",
            "expected a nonempty string",
        )
        perversities[pname] = _parse_perversity(entry, K, where)
    return ParsedDocument(
        name=name,
        complex=K,
        perversities=perversities,
        raw_perversities=tuple(raw_pervs),
    )


def _parse_perversity(
    entry: dict, K: FilteredComplex, where: str
) -> Perversity:
    kind = entry.get("kind")
    values = entry.get("values")
    pname = entry["name"]
    if kind == "codim":
        _need(
            isinstance(values, dict),
            f"{where}.values",
            "codim perversity wants an object mapping codim to value",
        )
        table = {}
        for key, raw in values.items():
            try:
                codim = int(key)
                table[codim] = parse_extint(raw)
            except (TypeError, ValueError):
                raise DocumentError(
                    f"{where}.values[{key!r}]: bad codim or value"
                ) from None
        missing = [k for k in range(1, K.n + 1) if k not in table]
        _need(
            not missing,
            f"{where}.values",
            f"no value for codimensions {missing}",
        )
        return Perversity.by_codim(lambda k: table[k], name=pname)
    if kind == "table":
        _need(
            isinstance(values, list),
            f"{where}.values",
            "table perversity wants a list of {level, index, value}",
        )
        vals = {}
        for i, row in enumerate(values):
            rw = f"{where}.values[{i}]"
            _need(isinstance(row, dict), rw, "expected an object")
            try:
                key = (int(row["level"]), int(row["index"]))
                vals[key] = parse_extint(row["value"])
            except (KeyError, TypeError, ValueError):
                raise DocumentError(
                    f"{rw}: wanted integer level and index plus a value"
                ) from None
        try:
            return Perversity.from_table(K, vals, name=pname)
        except KeyError as exc:
            raise DocumentError(
                f"{where}.values: no value for singular stratum "
                f"{exc.args[0]}; run the strata command to list them"
            ) from None
        except ValueError as exc:
            raise DocumentError(f"{where}.values: {exc}") from None
    raise DocumentError(f"{where}.kind: expected 'codim' or 'table'")


def _maximal(simplices) -> list[Simplex]:
    pool = set(simplices)
    proper = {
        f for s in pool for _, f in boundary_faces(s) if len(s) > 1
    }
    return [s for s in sorted(pool, key=lambda s: (len(s), s)) if s not in proper]


def complex_to_document(
    K: FilteredComplex, name: str, perversities: tuple[dict, ...] = ()
) -> dict:
    """Document form of a complex: maximal simplices as facets, each
    proper sublevel given by its own maximal simplices."""
    doc: dict = {"name": name, "n": K.n}
    doc["facets"] = [list(s) for s in _maximal(K.simplices)]
    filtration = {}
    previous: list[Simplex] = []
    for level in range(K.n):
        members = [s for s in K.simplices if K.level(s) <= level]
        if members and members != previous:
            filtration[str(level)] = [list(s) for s in _maximal(members)]
        previous = members
    if filtration:
        doc["filtration"] = filtration
    if perversities:
        doc["perversities"] = list(perversities)
    return doc


def document_text(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def lookup_perversity(parsed: ParsedDocument, name: str) -> Perversity:
    if name in parsed.perversities:
        return parsed.perversities[name]
    if name in PRESETS:
        return PRESETS[name]()
    known = sorted(set(parsed.perversities) | set(PRESETS))
    raise DocumentError(
        f"unknown perversity {name!r}; known: {', '.join(known)}"
    )


def parse_ring(text: str) -> RingSpec:
    if text == "Z":
        return INTEGERS
    if text.startswith("Zp:"):
        try:
            return RingSpec(int(text[3:], 10))
        except ValueError as exc:
            raise DocumentError(f"--ring {text!r}: {exc}") from None
    raise DocumentError(
        f"--ring {text!r}: expected Z or Zp:P with P prime"
    )


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class Report:
    """One verification record: stable identifiers, a human sentence, and
    a witness only when something failed."""

    check: str
    statement: str
    verdict: str
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def as_json(self) -> str:
        payload: dict = {
            "check": self.check,
            "statement": self.statement,
            "verdict": self.verdict,
        }
        if self.witness is not None:
            payload["witness"] = self.witness
        return json.dumps(payload, sort_keys=True)


def _report(check: str, statement: str, ok: bool, witness=None) -> Report:
    return Report(
        check, statement, "PASS" if ok else "FAIL",
        None if ok else witness,
    )


def _cell(g: HomologyResult) -> dict:
    return {"rank": g.rank, "torsion": list(g.torsion)}


def _group_mismatches(left: dict, right: dict) -> list[dict]:
    out = []
    for k in sorted(set(left) | set(right)):
        a = left.get(k, ZERO_GROUP)
        b = right.get(k, ZERO_GROUP)
        if a != b:
            out.append({"degree": k, "left": _cell(a), "right": _cell(b)})
    return out


def _presets() -> list[tuple[str, Perversity]]:
    return [(name, fn()) for name, fn in PRESETS.items()]


# -- verification suites ------------------------------------------------------


def suite_residual(K: FilteredComplex) -> list[Report]:
    """Chain-level bijectivity of the clot star assembly against the pair
    with the residual subcomplex, at every preset perversity."""
    out = []
    for name, pbar in _presets():
        rep = residual_decomposition_check(K, pbar)
        bad = [
            {
                "degree": v.degree,
                "star_rank": v.star_rank,
                "pair_rank": v.pair_rank,
            }
            for v in rep.degrees
            if not v.unimodular
        ]
        out.append(_report(
            f"residual-decomposition[{name}]",
            "clot star pairs assemble to a unimodular isomorphism onto "
            "the pair with the residual subcomplex",
            rep.bijective,
            {"degrees": bad},
        ))
    return out


def _clot_id(beta: Simplex) -> str:
    return "-".join(map(str, beta))


def suite_join(K: FilteredComplex) -> list[Report]:
    """Local calculation at every clot: the prediction from the link must
    equal the directly computed intersection homology of the clot join."""
    out = []
    from .intersection_chains import join_homology_prediction

    for name, pbar in _presets():
        for beta in clots(K):
            predicted = join_homology_prediction(K, pbar, beta)
            J = clot_join(K, beta)
            direct = intersection_homology(J, pbar.induced(K, J), INTEGERS)
            bad = _group_mismatches(predicted, direct)
            out.append(_report(
                f"join-homology[{name}][{_clot_id(beta)}]",
                "link prediction equals the computed intersection "
                "homology of the clot join",
                not bad,
                {"mismatches": bad},
            ))
    return out


def suite_blowup_join(K: FilteredComplex) -> list[Report]:
    """Same comparison on the cochain side: truncated link cohomology
    against the blown-up cohomology of the clot join."""
    out = []
    for name, pbar in _presets():
        for beta in clots(K):
            predicted = blown_up_join_prediction(K, pbar, beta)
            J = clot_join(K, beta)
            direct = blown_up_cohomology(J, pbar.induced(K, J), INTEGERS)
            bad = _group_mismatches(predicted, direct)
            out.append(_report(
                f"blown-up-join[{name}][{_clot_id(beta)}]",
                "link prediction equals the computed blown-up "
                "cohomology of the clot join",
                not bad,
                {"mismatches": bad},
            ))
    return out


def suite_restriction(K: FilteredComplex) -> list[Report]:
    """Restriction onto the residual subcomplex is surjective degree by
    degree, and the relative groups decompose over the clots."""
    out = []
    for name, pbar in _presets():
        ranks = restriction_surjectivity(K, pbar)
        bad = [
            {"degree": k, "image_rank": a, "lattice_rank": b}
            for k, (a, b) in sorted(ranks.items())
            if a != b
        ]
        out.append(_report(
            f"restriction-surjectivity[{name}]",
            "intersection cochains restrict onto those of the residual "
            "subcomplex",
            not bad,
            {"degrees": bad},
        ))
        lhs, rhs = relative_decomposition_sides(K, pbar)
        mism = _group_mismatches(lhs, rhs)
        out.append(_report(
            f"relative-decomposition[{name}]",
            "relative blown-up cohomology splits as the sum over clots "
            "of each join against its own residual",
            not mism,
            {"mismatches": mism},
        ))
    return out


def suite_subdivision(K: FilteredComplex) -> list[Report]:
    """The two comparison cochain maps, their round trip, and lattice
    preservation, for the zero and top perversities."""
    out = []
    comparison = BlownUpComparison(K)
    for name in ("zero", "top"):
        rep = compare_blown_up(K, PRESETS[name](), comparison=comparison)
        for label, ok in (
            ("collapse-cochain-map", rep.collapse_cochain_map),
            ("refine-cochain-map", rep.refine_cochain_map),
            ("round-trip-identity", rep.round_trip_identity),
            ("lattices-preserved", rep.lattices_preserved),
            ("round-trip-on-lattices", rep.round_trip_on_lattices),
        ):
            out.append(_report(
                f"subdivision-{label}[{name}]",
                "comparison maps between the blown-up complexes of the "
                "complex and of its barycentric subdivision",
                ok,
                {"degrees": list(rep.degrees)},
            ))
    return out


def _indicator(dim: int, i: int) -> list[int]:
    v = [0] * dim
    v[i] = 1
    return v


def _ordered_cup_reports(K: FilteredComplex) -> list[Report]:
    N = OrderedCochainComplex(K)
    top = N.top_degree()

    dd = N.as_complex().check_squares_to_zero()

    unit = N.unit()
    unit_ok = not any(mat_vec(N.coboundary_matrix(0), unit))
    for k in range(top + 1):
        for i in range(N.dim(k)):
            e = _indicator(N.dim(k), i)
            if N.cup(0, unit, k, e) != e or N.cup(k, e, 0, unit) != e:
                unit_ok = False

    leibniz_ok = True
    for ka in range(top + 1):
        for kb in range(top + 1):
            cob_ab = N.coboundary_matrix(ka + kb)
            cob_a = N.coboundary_matrix(ka)
            cob_b = N.coboundary_matrix(kb)
            sign = -1 if ka % 2 else 1
            for i in range(N.dim(ka)):
                ea = _indicator(N.dim(ka), i)
                da = [row[i] for row in cob_a]
                for j in range(N.dim(kb)):
                    eb = _indicator(N.dim(kb), j)
                    db = [row[j] for row in cob_b]
                    lhs = mat_vec(cob_ab, N.cup(ka, ea, kb, eb))
                    t1 = N.cup(ka + 1, da, kb, eb)
                    t2 = N.cup(ka, ea, kb + 1, db)
                    if lhs != [x + sign * y for x, y in zip(t1, t2)]:
                        leibniz_ok = False

    basis = [s for k in range(top + 1) for s in N.basis(k)]
    pair = {
        (f, g): N.basis_cup(f, g) for f in basis for g in basis
    }
    assoc_ok = True
    for f in basis:
        for g in basis:
            fg = pair[(f, g)]
            for h in basis:
                gh = pair[(g, h)]
                left = pair[(fg, h)] if fg is not None else None
                right = pair[(f, gh)] if gh is not None else None
                if left != right:
                    assoc_ok = False
    return [
        _report("cup-ordered-coboundary-squares-to-zero",
                "ordered simplicial coboundary squares to zero", dd),
        _report("cup-ordered-unit",
                "the vertex-indicator sum is a two-sided unit cocycle",
                unit_ok),
        _report("cup-ordered-leibniz",
                "coboundary is a graded derivation of the ordered cup",
                leibniz_ok),
        _report("cup-ordered-associative",
                "ordered cup is associative on basis indicators",
                assoc_ok),
    ]


def _blown_up_cup_reports(K: FilteredComplex) -> list[Report]:
    G = GlobalBlownUpComplex(K)
    top = G.top_degree()

    dd = G.as_complex().check_squares_to_zero()

    unit = blown_up_unit(G)
    unit_ok = not any(mat_vec(G.coboundary_matrix(0), unit))
    for k in range(top + 1):
        for i in range(G.dim(k)):
            e = _indicator(G.dim(k), i)
            if (global_cup_vector(G, 0, unit, k, e) != e
                    or global_cup_vector(G, k, e, 0, unit) != e):
                unit_ok = False

    leibniz_ok = True
    for ka in range(top + 1):
        for kb in range(top + 1):
            cob_ab = G.coboundary_matrix(ka + kb)
            cob_a = G.coboundary_matrix(ka)
            cob_b = G.coboundary_matrix(kb)
            sign = -1 if ka % 2 else 1
            for i in range(G.dim(ka)):
                ea = _indicator(G.dim(ka), i)
                da = [row[i] for row in cob_a]
                for j in range(G.dim(kb)):
                    eb = _indicator(G.dim(kb), j)
                    db = [row[j] for row in cob_b]
                    lhs = mat_vec(
                        cob_ab, global_cup_vector(G, ka, ea, kb, eb)
                    )
                    t1 = global_cup_vector(G, ka + 1, da, kb, eb)
                    t2 = global_cup_vector(G, ka, ea, kb + 1, db)
                    if lhs != [x + sign * y for x, y in zip(t1, t2)]:
                        leibniz_ok = False

    labels = [lab for k in range(top + 1) for lab in G.labels(k)]
    pair = {
        (a, b): class_cup(K, a, b) for a in labels for b in labels
    }
    assoc_ok = True
    for a in labels:
        for b in labels:
            ab = pair[(a, b)]
            for c in labels:
                bc = pair[(b, c)]
                left = None
                if ab is not None:
                    step = pair[(ab[1], c)]
                    if step is not None:
                        left = (ab[0] * step[0], step[1])
                right = None
                if bc is not None:
                    step = pair[(a, bc[1])]
                    if step is not None:
                        right = (bc[0] * step[0], step[1])
                if left != right:
                    assoc_ok = False
    return [
        _report("cup-blown-up-coboundary-squares-to-zero",
                "blown-up coboundary squares to zero", dd),
        _report("cup-blown-up-unit",
                "the all-ones class cochain is a two-sided unit cocycle",
                unit_ok),
        _report("cup-blown-up-leibniz",
                "coboundary is a graded derivation of the blown-up cup",
                leibniz_ok),
        _report("cup-blown-up-associative",
                "blown-up cup is associative on class labels", assoc_ok),
    ]


def suite_cup(K: FilteredComplex) -> list[Report]:
    """Algebra laws for both cup products on the document complex."""
    return _ordered_cup_reports(K) + _blown_up_cup_reports(K)


def suite_pistar(K: FilteredComplex) -> list[Report]:
    """The blow-up of face indicators, one representative per level-part
    size profile among the regular simplices (capped at five vertices):
    bijective, a cochain map, and multiplicative."""
    profiles: dict[tuple[int, ...], tuple] = {}
    for s in K.simplices:
        if len(s) > 5 or not is_regular_simplex(K, s):
            continue
        parts = decompose(K, s)
        sizes = tuple(len(p) for p in parts)
        profiles.setdefault(sizes, parts)
    out = []
    for sizes in sorted(profiles):
        rep = verify_blow_up_map(profiles[sizes])
        out.append(_report(
            f"blow-up-map[{'x'.join(map(str, sizes))}]",
            "face-indicator blow-up is a unimodular cochain map "
            "preserving the cup product",
            rep.ok,
            {
                "degrees": [list(d) for d in rep.degrees],
                "cochain_map": rep.cochain_map,
                "cup_preserved": rep.cup_preserved,
            },
        ))
    return out


SUITES = {
    "residual": suite_residual,
    "join": suite_join,
    "blowup-join": suite_blowup_join,
    "restriction": suite_restriction,
    "subdivision": suite_subdivision,
    "cup": suite_cup,
    "pistar": suite_pistar,
}


def run_suites(K: FilteredComplex, names) -> list[Report]:
    reports = [_report(
        "fullness",
        "every simplex meets each level in a single face",
        is_full(K),
    )]
    if not reports[0].passed:
        return reports
    for name in names:
        reports.extend(SUITES[name](K))
    return reports


# -- commands ----------------------------------------------------------------


def _load(path: str) -> ParsedDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror or exc}") from None
    return parse_document(text)


def _cmd_check_full(args) -> int:
    parsed = _load(args.file)
    K = parsed.complex
    if is_full(K):
        print(f"PASS {parsed.name}: full")
        return 0
    witness = None
    for s in K.simplices:
        if len(s) == 1:
            continue
        for level in sorted({K.vertex_level(v) for v in s}):
            w = tuple(v for v in s if K.vertex_level(v) <= level)
            if K.level(w) > level:
                witness = (s, level, w)
                break
        if witness:
            break
    s, level, w = witness  # type: ignore[misc]
    print(
        f"FAIL {parsed.name}: simplex {list(s)} meets level {level} in "
        f"{list(w)}, which only enters at level {K.level(w)}"
    )
    return 1


def _transported_table_entries(
    entries: tuple[dict, ...], K: FilteredComplex, sd: SubdivisionMap
) -> list[dict]:
    out = []
    for entry in entries:
        if entry.get("kind") != "table":
            out.append(entry)
            continue
        values = {
            (int(r["level"]), int(r["index"])): r["value"]
            for r in entry["values"]
        }
        rows = []
        for S in sd.source.singular_strata():
            carrier = sd.carrier(S.min_simplex())
            src = K.stratum_of(carrier)
            rows.append({
                "level": S.key[0],
                "index": S.key[1],
                "value": values[src.key],
            })
        out.append({
            "name": entry["name"], "kind": "table", "values": rows,
        })
    return out


def _cmd_subdivide(args) -> int:
    parsed = _load(args.file)
    K = parsed.complex
    entries = parsed.raw_perversities
    for _ in range(args.depth):
        sd = SubdivisionMap(K)
        entries = tuple(_transported_table_entries(entries, K, sd))
        K = sd.source
    suffix = f"-sd{args.depth}" if args.depth != 1 else "-sd"
    doc = complex_to_document(K, parsed.name + suffix, entries)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(document_text(doc))
    print(f"wrote {args.output}: {len(K)} simplices")
    return 0


def _format_torsion(g: HomologyResult) -> str:
    return ",".join(map(str, g.torsion)) if g.torsion else "-"


def _print_groups(groups: dict[int, HomologyResult]) -> None:
    print("degree  rank  torsion")
    for k in sorted(groups):
        g = groups[k]
        print(f"{k:<6d}  {g.rank:<4d}  {_format_torsion(g)}")


def _cmd_ih(args) -> int:
    parsed = _load(args.file)
    pbar = lookup_perversity(parsed, args.perversity)
    ring = parse_ring(args.ring)
    _print_groups(intersection_homology(parsed.complex, pbar, ring))
    return 0


def _cmd_bih(args) -> int:
    parsed = _load(args.file)
    pbar = lookup_perversity(parsed, args.perversity)
    ring = parse_ring(args.ring)
    _print_groups(blown_up_cohomology(parsed.complex, pbar, ring))
    return 0


def _cmd_strata(args) -> int:
    parsed = _load(args.file)
    K = parsed.complex
    print("level  index  dim  codim  kind")
    for S in K.strata():
        kind = "regular" if S.regular else "singular"
        dim = max(len(s) for s in S.simplices) - 1
        print(
            f"{S.key[0]:<5d}  {S.key[1]:<5d}  {dim:<3d}  "
            f"{S.codim:<5d}  {kind}"
        )
    return 0


def _cmd_verify(args) -> int:
    parsed = _load(args.file)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = run_suites(parsed.complex, names)
    for report in reports:
        print(report.as_json())
    failed = sum(not r.passed for r in reports)
    print(
        f"{len(reports)} checks, {failed} failed", file=sys.stderr
    )
    return 1 if failed else 0


def _cmd_corpus(args) -> int:
    if args.action == "list":
        for member in all_members():
            print(f"{member.name:26s} {member.simplex_count:4d}  "
                  f"{member.description}")
        return 0
    try:
        member = corpus_member(args.name)
    except KeyError as exc:
        raise DocumentError(str(exc.args[0])) from None
    out = args.output or f"{member.name}.json"
    doc = complex_to_document(member.complex, member.name)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(document_text(doc))
    print(f"wrote {out}: {member.simplex_count} simplices")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stratihom",
        description="exact intersection homology and blown-up "
        "cohomology of filtered simplicial complexes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-full", help="test the fullness condition")
    p.add_argument("file")
    p.set_defaults(func=_cmd_check_full)

    p = sub.add_parser("subdivide", help="barycentric subdivision")
    p.add_argument("file")
    p.add_argument("-k", "--depth", type=int, default=1)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_subdivide)

    p = sub.add_parser("ih", help="intersection homology table")
    p.add_argument("file")
    p.add_argument("--perversity", required=True)
    p.add_argument("--ring", default="Z")
    p.set_defaults(func=_cmd_ih)

    p = sub.add_parser("bih", help="blown-up cohomology table")
    p.add_argument("file")
    p.add_argument("--perversity", required=True)
    p.add_argument("--ring", default="Z")
    p.set_defaults(func=_cmd_bih)

    p = sub.add_parser("strata", help="stratum table for authoring "
                                      "table perversities")
    p.add_argument("file")
    p.set_defaults(func=_cmd_strata)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("file")
    p.add_argument(
        "--suite",
        choices=sorted(SUITES) + ["all"],
        default="all",
    )
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("corpus", help="built-in example documents")
    p.add_argument("action", choices=["generate", "list"])
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_corpus)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "corpus" and args.action == "generate" and not args.name:
        print("error: corpus generate needs a member name", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FullnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
