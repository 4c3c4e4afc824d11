"""Command line front end binding the modules into reproducible runs.

Reports go to stdout.  Commands that produce a document (an operad, a
box product, a face poset, an enumeration) write it to --out when given
and to stdout otherwise.  Exit status: 0 when everything requested
passed, 1 when a check failed, 2 on usage errors (including unreadable
or ill-formed input files).  All randomness is drawn from --seed, so a
repeated invocation prints identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import algebra, cells, corpus, cosimp, freecons, seqcore, trees
from .seqcore import CLOSED, OPEN, Colour, Profile


class UsageError(Exception):
    pass


COLOUR_LETTERS = {"c": CLOSED, "o": OPEN}


def parse_profile(text: str, colours: tuple[Colour, ...]) -> Profile:
    """Parse "cco->o" (single letters) or "closed,closed,open->open"."""
    head, arrow, tail = text.partition("->")
    if not arrow or not tail:
        raise UsageError(f"profile {text!r} is not of the form INPUTS->OUTPUT")
    by_id = {c.id: c for c in colours}

    def one(token: str) -> Colour:
        c = COLOUR_LETTERS.get(token, by_id.get(token))
        if c is None or c not in colours:
            raise UsageError(f"unknown colour {token!r} in profile {text!r}")
        return c

    if "," in head or head in by_id:
        inputs = tuple(one(t) for t in head.split(",") if t)
    else:
        inputs = tuple(one(t) for t in head)
    return Profile(inputs, one(tail))


BUILTINS = {
    "act": lambda a: algebra.builtin_act(False, a),
    "act-unital": lambda a: algebra.builtin_act(True, a),
    "as": lambda a: algebra.builtin_as(False, a),
    "as-strict": lambda a: algebra.builtin_as(True, a),
}


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


@dataclass
class Result:
    """What a handler produced: checks, payload lines, and a document."""

    status: int = 0
    items: list = field(default_factory=list)  # (name, "pass"/"fail"/"skip", detail)
    lines: list = field(default_factory=list)
    artifact: str | None = None

    def check(self, name: str, report) -> None:
        if report.passed:
            self.items.append((name, "pass", ""))
        else:
            self.status = max(self.status, 1)
            head = report.violations[0] if report.violations else "failed"
            self.items.append((name, "fail", f"{len(report.violations)}: {head}"))

    def skip(self, name: str, reason: str) -> None:
        self.items.append((name, "skip", reason))


def _emit(result: Result, args) -> int:
    out = getattr(args, "out", None)
    if args.format == "json":
        doc = {
            "status": result.status,
            "items": [
                {"name": n, "status": s, "detail": d} for n, s, d in result.items
            ],
            "lines": result.lines,
        }
        if result.artifact is not None:
            if out is not None:
                _write(out, result.artifact)
                doc["wrote"] = out
            else:
                try:
                    doc["artifact"] = json.loads(result.artifact)
                except json.JSONDecodeError:
                    doc["artifact"] = result.artifact.splitlines()
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return result.status
    lines = list(result.lines)
    for name, status, detail in result.items:
        tag = {"pass": "PASS", "fail": "FAIL", "skip": "SKIP"}[status]
        lines.append(f"{tag} {name}" + (f" -- {detail}" if detail else ""))
    counts = {"pass": 0, "fail": 0, "skip": 0}
    for _, status, _ in result.items:
        counts[status] += 1
    if len(result.items) > 1:
        lines.append(
            f"{counts['pass']} passed, {counts['fail']} failed,"
            f" {counts['skip']} skipped"
        )
    if result.artifact is not None:
        if out is not None:
            _write(out, result.artifact)
            lines.append(f"wrote {out}")
        else:
            lines.append(result.artifact.rstrip("\n"))
    sys.stdout.write("".join(line + "\n" for line in lines))
    return result.status


# ---------------------------------------------------------------------------
# operad


def _builtin_operad(args) -> algebra.FiniteOperad:
    return BUILTINS[args.builtin](args.maxArity)


def cmd_operad_check(args) -> Result:
    if args.file is not None:
        o = algebra.operad_from_json(_read(args.file))
        name = f"operad axioms: {args.file}"
    elif args.builtin is not None:
        o = _builtin_operad(args)
        name = f"operad axioms: {args.builtin} (maxArity {args.maxArity})"
    else:
        raise UsageError("operad check needs --builtin or --file")
    result = Result()
    result.check(name, algebra.check_operad_axioms(o))
    return result


def cmd_operad_build(args) -> Result:
    return Result(artifact=algebra.operad_to_json(_builtin_operad(args)))


# ---------------------------------------------------------------------------
# free constructions


def cmd_free(args) -> Result:
    o = algebra.operad_from_json(_read(args.operad))
    m = seqcore.sequence_from_json(_read(args.module))
    profile = parse_profile(args.profile, o.carrier.colours)
    if args.kind == "ib":
        elements = freecons.free_ib_elements(o, m, profile)
        codes = [freecons.ib_element_code(x) for x in elements]
    else:
        elements = freecons.free_bimod_elements(o, m, profile)
        codes = [freecons.bimod_element_code(x) for x in elements]
    result = Result(lines=[f"{len(codes)} elements"])
    result.artifact = "".join(code + "\n" for code in codes)
    return result


# ---------------------------------------------------------------------------
# semi-cosimplicial structures


def cmd_cosimp_check(args) -> Result:
    x = cosimp.cosimp_from_json(_read(args.file))
    result = Result()
    result.check(f"semi-cosimplicial identities: {args.file}",
                 cosimp.check_semicosimplicial(x))
    return result


def cmd_cosimp_box(args) -> Result:
    x = cosimp.cosimp_from_json(_read(args.x))
    y = cosimp.cosimp_from_json(_read(args.y))
    box = cosimp.box_product(x, y)
    sizes = " ".join(str(len(level)) for level in box.levels)
    return Result(lines=[f"box levels: {sizes}"],
                  artifact=cosimp.cosimp_to_json(box))


def cmd_cosimp_derive(args) -> Result:
    text = _read(args.bimodule)
    bound = json.loads(text)["maxArity"]
    over = algebra.builtin_act(False, bound)
    bm = algebra.bimodule_from_json(text, over)
    eta = algebra.sequence_map_from_json(
        _read(args.eta), algebra.builtin_act(True, bound).carrier, bm.carrier
    )
    mon, module, h = cosimp.derive_monoid_from_bimodule(bm, eta)
    result = Result()
    result.check("box monoid axioms", cosimp.check_box_monoid(mon))
    result.check("box module axioms", cosimp.check_box_module(module))
    doc = {
        "monoid": json.loads(cosimp.cosimp_to_json(mon.x)),
        "module": json.loads(cosimp.cosimp_to_json(module.x)),
        "h": [dict(sorted(hn.items())) for hn in h],
    }
    result.artifact = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return result


def cmd_cosimp_seed(args) -> Result:
    """Write a seeded corpus bimodule and its unit map for cosimp derive."""
    inst = corpus.seeded_act_instances(
        args.seed, 1, unital=True, max_max_arity=min(3, args.maxArity)
    )[0]
    bm = algebra.induced_bimodule(corpus.restrict_witness_positive(inst.witness))
    _write(args.out_bimodule, algebra.bimodule_to_json(bm))
    _write(args.out_eta, algebra.sequence_map_to_json(inst.witness.underlying))
    return Result(lines=[
        f"instance {inst.name}",
        f"wrote {args.out_bimodule}",
        f"wrote {args.out_eta}",
    ])


# ---------------------------------------------------------------------------
# trees


def _tree_code(t) -> str:
    if isinstance(t, trees.TreeShape):
        return trees.shape_code(t)
    if isinstance(t, trees.STree):
        return trees.stree_code(t)
    if isinstance(t, trees.OColouredTree):
        return trees.stree_code(t.stree)
    if isinstance(t, trees.PearlTree):
        return trees.stree_code(t.stree, (t.pearl,))
    return trees.stree_code(t.stree, t.pearls)


def cmd_trees_enumerate(args) -> Result:
    opts = {}
    if args.constraint == "all":
        opts["max_vertices"] = (
            args.max_vertices if args.max_vertices is not None else args.n
        )
    if args.constraint in ("pearl", "section"):
        if args.profile is None:
            raise UsageError(f'constraint "{args.constraint}" needs --profile')
        opts["profile"] = parse_profile(args.profile, (CLOSED, OPEN))
        opts["max_arity"] = args.maxArity
    try:
        listing = trees.enumerate_trees(args.n, args.constraint, **opts)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    result = Result(lines=[f"{len(listing)} trees"])
    result.artifact = "".join(_tree_code(t) + "\n" for t in listing)
    return result


def cmd_trees_count(args) -> Result:
    return Result(lines=[str(trees.count_ptrees(args.m, args.n))])


# ---------------------------------------------------------------------------
# cells


def _colour(name: str) -> Colour:
    return CLOSED if name == "closed" else OPEN


def cmd_cells_wa(args) -> Result:
    poset = cells.wa_face_poset(args.n, _colour(args.colour))
    result = Result()
    if args.dot:
        result.artifact = poset.to_dot() + "\n"
    elif args.format == "json":
        result.artifact = poset.to_json() + "\n"
    else:
        fvec = " ".join(str(k) for k in poset.f_vector())
        result.lines.append(f"f-vector: {fvec}")
        cover_map = dict(poset.covers)
        for code, dim in poset.faces:
            ups = " ".join(cover_map[code])
            result.lines.append(f"dim {dim}  {code}" + (f"  -> {ups}" if ups else ""))
    return result


def cmd_cells_fvector(args) -> Result:
    poset = cells.wa_face_poset(args.n, _colour(args.colour))
    return Result(lines=[" ".join(str(k) for k in poset.f_vector())])


def cmd_cells_subdiv(args) -> Result:
    listing = cells.subdivision_cells(args.n)
    report = cells.audit_subdivision(listing, args.n)
    result = Result()
    for cell in listing:
        result.lines.append(
            f"{trees.shape_code(cell.tree)}  lambda {cell.dim_lambda}"
            f"  chi {cell.dim_chi}"
        )
    name = f"subdivision totals equal {args.n - 1}"
    if report.passed:
        result.items.append((name, "pass", f"{len(listing)} cells"))
    else:
        result.status = 1
        result.items.append((name, "fail", report.violations[0]))
    return result


def cmd_cells_identities(args) -> Result:
    result = Result()
    for group, identities in cells.all_identity_groups().items():
        report = cells.check_point_identities(identities, args.seed, args.points)
        name = (f"{group} identities ({len(identities)} at"
                f" {args.points} points, seed {args.seed})")
        if report.passed:
            result.items.append((name, "pass", ""))
        else:
            result.status = 1
            bad = [c for c in report.checks if c[1]][0]
            result.items.append((name, "fail", f"{bad[0]}: witness {bad[2]}"))
    return result


# ---------------------------------------------------------------------------
# the batch suite


def _catalan(n: int) -> int:
    counts = [0, 1]
    for k in range(2, n + 1):
        counts.append(sum(counts[i] * counts[k - i] for i in range(1, k)))
    return counts[n]


def _schroeder(n: int) -> int:
    a = [0, 1, 1]
    for k in range(2, n):
        a.append((3 * (2 * k - 1) * a[k] - (k - 2) * a[k - 1]) // (k + 1))
    return a[n]


def _suite_items(seed: int, max_arity: int, max_level: int):
    """The canonical check list: (name, needed caps, thunk) triples.

    A thunk returns (passed, detail); items whose caps exceed the
    configured ones are reported as skipped, never silently dropped.
    """
    items = []

    def add(name, arity, level, thunk):
        items.append((name, arity, level, thunk))

    def axiom_thunk(report_fn):
        def thunk():
            report = report_fn()
            head = report.violations[0] if report.violations else ""
            return report.passed, head

        return thunk

    for label in ("act", "act-unital", "as", "as-strict"):
        for bound in (3, 6):
            add(
                f"operad axioms: {label} (maxArity {bound})",
                bound,
                0,
                axiom_thunk(
                    lambda label=label, bound=bound: algebra.check_operad_axioms(
                        BUILTINS[label](bound)
                    )
                ),
            )

    insts = corpus.seeded_act_instances(
        seed, 3, unital=False, max_max_arity=min(3, max_arity)
    )

    def ib_thunk(inst):
        def thunk():
            m = algebra.induced_infbimodule(inst.witness)
            report = algebra.check_infbimodule_axioms(m)
            if not report.passed:
                return False, report.violations[0]
            pair = cosimp.derive_pair_from_infbimodule(m)
            for part, x in (("closed", pair.closed_part), ("open", pair.open_part)):
                rep = cosimp.check_semicosimplicial(x)
                if not rep.passed:
                    return False, f"{part} part: {rep.violations[0]}"
            back = cosimp.infbimodule_from_pair(pair)
            if (back.left_inf, back.right_inf) != (m.left_inf, m.right_inf):
                return False, "round trip through the pair changed a table"
            return True, ""

        return thunk

    for inst in insts:
        add(
            f"infinitesimal bimodule, pair, round trip: {inst.name}",
            3,
            0,
            ib_thunk(inst),
        )

    binsts = corpus.seeded_act_instances(
        seed + 1, 2, unital=True, max_max_arity=min(3, max_arity)
    )

    def bimod_thunk(inst):
        def thunk():
            bm = algebra.induced_bimodule(
                corpus.restrict_witness_positive(inst.witness)
            )
            report = algebra.check_bimodule_axioms(bm)
            if not report.passed:
                return False, report.violations[0]
            mon, module, _ = cosimp.derive_monoid_from_bimodule(
                bm, inst.witness.underlying
            )
            for name, rep in (
                ("monoid", cosimp.check_box_monoid(mon)),
                ("module", cosimp.check_box_module(module)),
            ):
                if not rep.passed:
                    return False, f"box {name}: {rep.violations[0]}"
            return True, ""

        return thunk

    for inst in binsts:
        add(f"bimodule, box monoid and module: {inst.name}", 3, 0, bimod_thunk(inst))

    def loops_thunk(level):
        def thunk():
            mon, module, _ = cosimp.loops_example(
                ["*", "u", "v"], ["*", "u"], "*", level
            )
            for name, rep in (
                ("monoid", cosimp.check_box_monoid(mon)),
                ("module", cosimp.check_box_module(module)),
            ):
                if not rep.passed:
                    return False, f"box {name}: {rep.violations[0]}"
            return True, ""

        return thunk

    for level in (3, 4):
        add(
            f"box monoid and module: loops |x|=3 |a|=2 (maxLevel {level})",
            0,
            level,
            loops_thunk(level),
        )

    def box_unit_thunk():
        mon, _, _ = cosimp.loops_example(["*", "u"], ["*"], "*", min(3, max_level))
        x = mon.x
        e = cosimp.constant_point(x.max_level)
        left = cosimp.box_product(e, x)
        right = cosimp.box_product(x, e)
        for m in range(x.max_level + 1):
            want = len(x.levels[m])
            if len(left.levels[m]) != want or len(right.levels[m]) != want:
                return False, f"level {m}: {len(left.levels[m])} {len(right.levels[m])} vs {want}"
        ee = cosimp.box_product(e, e)
        if any(len(level) != 1 for level in ee.levels):
            return False, "box of points has a level with more than one class"
        return True, ""

    add("box unit laws preserve level sizes", 0, 3, box_unit_thunk)

    def box_assoc_thunk():
        a, _, _ = cosimp.loops_example(["*", "u"], ["*"], "*", 3)
        b, _, _ = cosimp.loops_example(["*", "v", "w"], ["*"], "*", 3)
        e = cosimp.constant_point(3)
        for x, y, z in ((a.x, b.x, e), (a.x, a.x, b.x), (e, b.x, a.x)):
            lhs = cosimp.box_product(cosimp.box_product(x, y), z)
            rhs = cosimp.box_product(x, cosimp.box_product(y, z))
            if [len(l) for l in lhs.levels] != [len(l) for l in rhs.levels]:
                return False, "level sizes differ between the two bracketings"
        return True, ""

    add("box associativity: level cardinalities agree", 0, 3, box_assoc_thunk)

    def tree_counts_thunk():
        for n in range(1, 6):
            total = len(trees.enumerate_trees(n, "min_arity_2"))
            if total != _schroeder(n):
                return False, f"n={n}: {total} != {_schroeder(n)}"
            binary = sum(
                1
                for t in trees.enumerate_trees(n, "min_arity_2")
                if all(trees.arity_at(t, v) == 2 for v in trees.vertex_paths(t))
            )
            if binary != _catalan(n):
                return False, f"n={n}: {binary} binary != {_catalan(n)}"
        return True, ""

    add("tree counts match the recurrences (n <= 5)", 0, 0, tree_counts_thunk)

    def colouring_thunk():
        for n in range(2, 6):
            shapes = len(trees.enumerate_trees(n, "min_arity_2"))
            coloured = len(trees.enumerate_trees(n, "tree_n_o"))
            if shapes != coloured:
                return False, f"n={n}: {coloured} colourings of {shapes} shapes"
        return True, ""

    add("open colouring unique per shape (n <= 5)", 0, 0, colouring_thunk)

    def fvector_thunk():
        frozen = {4: (5, 5, 1), 5: (14, 21, 9, 1)}
        for n in range(2, 7):
            for colour in (CLOSED, OPEN):
                poset = cells.wa_face_poset(n, colour)
                if poset.euler_characteristic() != 1:
                    return False, f"Euler at n={n} {colour.id}"
                if n in frozen and poset.f_vector() != frozen[n]:
                    return False, f"f-vector at n={n} {colour.id}: {poset.f_vector()}"
        return True, ""

    add("face posets: frozen f-vectors and Euler 1 (n <= 6)", 0, 0, fvector_thunk)

    def subdiv_thunk():
        for n in range(1, 7):
            report = cells.audit_subdivision(cells.subdivision_cells(n), n)
            if not report.passed:
                return False, report.violations[0]
        return True, ""

    add("subdivision totals equal n - 1 (n <= 6)", 0, 0, subdiv_thunk)

    def identities_thunk(group, identities):
        def thunk():
            report = cells.check_point_identities(identities, seed, 1000)
            if report.passed:
                return True, ""
            bad = [c for c in report.checks if c[1]][0]
            return False, f"{bad[0]}: witness {bad[2]}"

        return thunk

    for group, identities in cells.all_identity_groups().items():
        add(
            f"cell identities: {group} ({len(identities)} at 1000 points)",
            0,
            0,
            identities_thunk(group, identities),
        )

    def adjunction_thunk(kind):
        def thunk():
            pair = corpus.seeded_free_pairs(seed + 2, 1)[0]
            if kind == "infinitesimal":
                target = algebra.induced_infbimodule(pair.witness)
            else:
                target = algebra.induced_bimodule(pair.witness)
            report = freecons.adjunction_check(
                algebra.builtin_act(False, 3), pair.m, target
            )
            if not report.passed:
                return False, report.violations[0]
            return True, f"{report.sequence_maps} maps ({pair.name})"

        return thunk

    add("free adjunction, infinitesimal", 3, 0, adjunction_thunk("infinitesimal"))
    add("free adjunction, full bimodule", 3, 0, adjunction_thunk("full"))

    def x_identity_thunk(bound):
        def thunk():
            As = algebra.builtin_as(False, bound)
            beta = seqcore.SSeqMap(
                As.carrier,
                As.carrier,
                {p: {"*": "*"} for p in As.carrier.profiles()},
            )
            X, eta = algebra.x_construction(
                As, algebra.operad_self_bimodule(As), algebra.identity_witness(As), beta
            )
            if X != algebra.builtin_act(True, bound):
                return False, "tables differ from the builtin operad"
            return True, ""

        return thunk

    for bound in (3, 6):
        add(
            f"x construction reproduces the builtin operad (maxArity {bound})",
            bound,
            0,
            x_identity_thunk(bound),
        )

    def x_detect_thunk():
        family = {CLOSED: ("0", "1")}
        endo = algebra.endomorphism_operad(family, 3)

        def mu(row):
            return "1" if all(v == "1" for v in row) else "0"

        maps = {}
        for arity in range(0, 4):
            p = seqcore.profile_closed(arity)
            maps[p] = {"*": algebra.endo_element_label(family, p, mu)}
        w = algebra.operad_map(algebra.builtin_as(False, 3), endo, maps)
        b = algebra.induced_bimodule(w)
        good = algebra.check_assumption_13(
            w.src, b, algebra.identity_witness(w.src), w.underlying
        )
        if not good.passed:
            return False, f"valid unit rejected: {good.violations[0]}"
        p0 = seqcore.profile_closed(0)
        wrong = {p: dict(m) for p, m in w.underlying.maps.items()}
        unit_image = wrong[p0]["*"]
        other = [x for x in endo.carrier.elements(p0) if x != unit_image]
        wrong[p0]["*"] = other[0]
        beta_bad = seqcore.SSeqMap(w.src.carrier, b.carrier, wrong)
        bad = algebra.check_assumption_13(
            w.src, b, algebra.identity_witness(w.src), beta_bad
        )
        if bad.passed or not bad.violations:
            return False, "a broken unit slipped through"
        return True, f"witness: {bad.violations[0]}"

    add("x construction unit condition flags a mutation", 3, 0, x_detect_thunk)

    return items


def cmd_suite(args) -> Result:
    result = Result()
    for name, arity, level, thunk in _suite_items(
        args.seed, args.maxArity, args.maxLevel
    ):
        if arity > args.maxArity:
            result.skip(name, f"needs maxArity {arity}, capped at {args.maxArity}")
            continue
        if level > args.maxLevel:
            result.skip(name, f"needs maxLevel {level}, capped at {args.maxLevel}")
            continue
        passed, detail = thunk()
        if passed:
            result.items.append((name, "pass", detail))
        else:
            result.status = 1
            result.items.append((name, "fail", detail))
    result.lines.append(
        f"suite seed {args.seed}, maxArity {args.maxArity}, maxLevel {args.maxLevel}"
    )
    return result


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="operadkit",
        description="Exact checks and builds for two-coloured operad combinatorics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=False, arity=None, level=None):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", default=None)
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if arity is not None:
            p.add_argument("--maxArity", type=int, default=arity)
        if level is not None:
            p.add_argument("--maxLevel", type=int, default=level)

    operad = sub.add_parser("operad", help="builtin and file-based operads")
    osub = operad.add_subparsers(dest="subcommand", required=True)
    ocheck = osub.add_parser("check", help="run the operad axiom checker")
    ocheck.add_argument("--builtin", choices=sorted(BUILTINS))
    ocheck.add_argument("--file")
    common(ocheck, arity=4)
    ocheck.set_defaults(handler=cmd_operad_check)
    obuild = osub.add_parser("build", help="emit a builtin operad as JSON")
    obuild.add_argument("--builtin", choices=sorted(BUILTINS), required=True)
    common(obuild, arity=4)
    obuild.set_defaults(handler=cmd_operad_build)

    free = sub.add_parser("free", help="free (infinitesimal) bimodule elements")
    fsub = free.add_subparsers(dest="subcommand", required=True)
    for kind, text in (("ib", "one pearl"), ("bimod", "a pearl section")):
        fp = fsub.add_parser(kind, help=f"normal forms with {text}")
        fp.add_argument("--operad", required=True)
        fp.add_argument("--module", required=True)
        fp.add_argument("--profile", required=True)
        common(fp)
        fp.set_defaults(handler=cmd_free, kind=kind)

    cs = sub.add_parser("cosimp", help="semi-cosimplicial sets and box products")
    csub = cs.add_subparsers(dest="subcommand", required=True)
    ccheck = csub.add_parser("check", help="verify the cosimplicial identities")
    ccheck.add_argument("--file", required=True)
    common(ccheck)
    ccheck.set_defaults(handler=cmd_cosimp_check)
    cbox = csub.add_parser("box", help="box product of two files")
    cbox.add_argument("--x", required=True)
    cbox.add_argument("--y", required=True)
    common(cbox)
    cbox.set_defaults(handler=cmd_cosimp_box)
    cderive = csub.add_parser("derive", help="box monoid and module from a bimodule")
    cderive.add_argument("--bimodule", required=True)
    cderive.add_argument("--eta", required=True)
    common(cderive)
    cderive.set_defaults(handler=cmd_cosimp_derive)
    cseed = csub.add_parser("seed", help="write a corpus bimodule and unit map")
    cseed.add_argument("--out-bimodule", required=True)
    cseed.add_argument("--out-eta", required=True)
    common(cseed, seed=True, arity=3)
    cseed.set_defaults(handler=cmd_cosimp_seed)

    tr = sub.add_parser("trees", help="labelled tree enumeration")
    tsub = tr.add_subparsers(dest="subcommand", required=True)
    tenum = tsub.add_parser("enumerate", help="one canonical code per line")
    tenum.add_argument("--n", type=int, required=True)
    tenum.add_argument(
        "--constraint",
        required=True,
        choices=("all", "min_arity_2", "c_only", "tree_n_o", "pearl", "section"),
    )
    tenum.add_argument("--max-vertices", type=int, default=None)
    tenum.add_argument("--profile", default=None)
    common(tenum, arity=3)
    tenum.set_defaults(handler=cmd_trees_enumerate)
    tcount = tsub.add_parser("count", help="pearl tree count tr(m, n)")
    tcount.add_argument("--m", type=int, required=True)
    tcount.add_argument("--n", type=int, required=True)
    common(tcount)
    tcount.set_defaults(handler=cmd_trees_count)

    ce = sub.add_parser("cells", help="cell-level models and face posets")
    cesub = ce.add_subparsers(dest="subcommand", required=True)
    cwa = cesub.add_parser("wa", help="face poset of the level-n complex")
    cwa.add_argument("--n", type=int, required=True)
    cwa.add_argument("--colour", choices=("closed", "open"), required=True)
    cwa.add_argument("--dot", action="store_true")
    common(cwa)
    cwa.set_defaults(handler=cmd_cells_wa)
    cfv = cesub.add_parser("fvector", help="face counts by dimension")
    cfv.add_argument("--n", type=int, required=True)
    cfv.add_argument("--colour", choices=("closed", "open"), required=True)
    common(cfv)
    cfv.set_defaults(handler=cmd_cells_fvector)
    csd = cesub.add_parser("subdiv", help="subdivision cells and dimension audit")
    csd.add_argument("--n", type=int, required=True)
    common(csd)
    csd.set_defaults(handler=cmd_cells_subdiv)
    cid = cesub.add_parser("identities", help="point identities at random rationals")
    cid.add_argument("--points", type=int, default=1000)
    common(cid, seed=True)
    cid.set_defaults(handler=cmd_cells_identities)

    suite = sub.add_parser("suite", help="the full deterministic check battery")
    suite.add_argument("--all", action="store_true",
                       help="run every item (the default)")
    common(suite, seed=True, arity=4, level=4)
    suite.set_defaults(handler=cmd_suite)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.handler(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return _emit(result, args)


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
