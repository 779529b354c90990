"""Command-line front end: enumeration, arithmetic, canonical bases with an
on-disk cache, CSV table export, and the named verification suites."""

import argparse
import csv
import hashlib
import json
import os
import random
import sys

from . import indexsets as ix
from . import schur as sc
from . import stable as st
from .indexsets import ThetaMatrix

FORMAT_VERSION = 1
CACHE_ENV = "THETASCHUR_CACHE_DIR"

FAMILIES = {
    "schur-j": lambda n, d: sc.Context("schur-j", n, d),
    "schur-i": lambda n, d: sc.Context("schur-i", n, d),
    "kj": lambda n, d: sc.Context("kj", n),
    "kj-gt": lambda n, d: sc.Context("kj>", n),
    "ki": lambda n, d: sc.Context("ki", n),
}


class ValidationError(Exception):
    pass


def parse_matrix(text, n):
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"matrix is not valid bracket syntax: {exc}")
    if (not isinstance(rows, list)
            or any(not isinstance(r, list) for r in rows)
            or any(not all(isinstance(x, int) for x in r) for r in rows)):
        raise ValidationError("matrix must be a list of integer rows")
    try:
        return ThetaMatrix(n, rows)
    except ValueError as exc:
        raise ValidationError(str(exc))


def parse_word(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ValidationError("word must be comma-separated letters")


def make_context(args):
    fam = FAMILIES.get(args.family)
    if fam is None:
        raise ValidationError(f"unknown family {args.family}")
    if args.family.startswith("schur") and args.d is None:
        raise ValidationError(f"family {args.family} needs --d")
    return fam(args.n, args.d)


def cache_dir(args):
    path = args.cache_dir or os.environ.get(CACHE_ENV) or os.path.join(
        os.path.expanduser("~"), ".cache", "thetaschur")
    os.makedirs(path, exist_ok=True)
    return path


def cache_key(ctx, A):
    payload = json.dumps({
        "v": FORMAT_VERSION, "family": ctx.family, "n": ctx.n, "d": ctx.d,
        "matrix": [list(r) for r in A.rows]}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:24]


def cache_load(path, key):
    manifest_path = os.path.join(path, "manifest.json")
    if not os.path.exists(manifest_path):
        return None
    with open(manifest_path) as fh:
        manifest = json.load(fh)
    entry = manifest.get(key)
    if entry is None or entry.get("format") != FORMAT_VERSION:
        return None
    fpath = os.path.join(path, entry["file"])
    if not os.path.exists(fpath):
        return None
    with open(fpath) as fh:
        return json.load(fh)


def cache_store(path, key, data):
    manifest_path = os.path.join(path, "manifest.json")
    manifest = {}
    if os.path.exists(manifest_path):
        with open(manifest_path) as fh:
            manifest = json.load(fh)
    fname = f"canonical_{key}.json"
    with open(os.path.join(path, fname), "w") as fh:
        json.dump(data, fh, sort_keys=True)
    manifest[key] = {"file": fname, "format": FORMAT_VERSION}
    with open(manifest_path, "w") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=0)


def element_pretty(x):
    lines = []
    for A in x.support():
        lines.append(f"  {x.terms[A]!r}  *  {[list(r) for r in A.rows]}")
    return "\n".join(lines) if lines else "  0"


def emit_element(x, fmt):
    if fmt == "json":
        print(json.dumps(x.to_json(), sort_keys=True))
    else:
        print(element_pretty(x))


# ---------------------------------------------------------------------------
# commands

def cmd_enumerate(args):
    tag = {"xi": ix.Xi, "ixi": ix.iXi}.get(args.set)
    if tag is not None:
        mats = ix.enumerate_tag(tag(args.n, args.d))
        if args.format == "json":
            print(json.dumps([[list(r) for r in A.rows] for A in mats]))
        elif args.format == "csv":
            w = csv.writer(sys.stdout)
            w.writerow(["index", "matrix"])
            for k, A in enumerate(mats):
                w.writerow([k, json.dumps([list(r) for r in A.rows])])
        else:
            for A in mats:
                print([list(r) for r in A.rows])
            print(f"# total: {len(mats)}")
        return 0
    if args.set in ("pi", "ipi"):
        words = (ix.words_pi if args.set == "pi" else ix.words_ipi)(
            args.n, args.d)
        if args.format == "json":
            print(json.dumps([list(w) for w in words]))
        else:
            for w in words:
                print(",".join(map(str, w)))
            print(f"# total: {len(words)}")
        return 0
    raise ValidationError(f"unknown set {args.set}")


def cmd_mul(args):
    ctx = make_context(args)
    A = parse_matrix(args.left, args.n)
    B = parse_matrix(args.right, args.n)
    res = sc.mul(sc.std(ctx, A), sc.std(ctx, B))
    emit_element(res, args.format)
    return 0


def cmd_monomial(args):
    ctx = make_context(args)
    A = parse_matrix(args.matrix, args.n)
    emit_element(sc.monomial(ctx, A), args.format)
    return 0


def cmd_bar(args):
    ctx = make_context(args)
    A = parse_matrix(args.matrix, args.n)
    emit_element(sc.bar_element(sc.std(ctx, A)), args.format)
    return 0


def cmd_canonical(args):
    ctx = make_context(args)
    A = parse_matrix(args.matrix, args.n)
    path = cache_dir(args)
    key = cache_key(ctx, A)
    data = cache_load(path, key)
    if data is None:
        data = sc.canonical(ctx, A).to_json()
        cache_store(path, key, data)
    # reload through the cache for bit-identical output
    data = cache_load(path, key)
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        emit_element(sc.Element.from_json(data), args.format)
    return 0


def cmd_act(args):
    from . import tensor as tn
    ctx = tn.TensorContext(args.n, args.d, "e", "B")
    A = parse_matrix(args.matrix, args.n)
    actx = sc.Context("schur-j", args.n, args.d)
    word = parse_word(args.word)
    res = tn.schur_elem_act(sc.std(actx, A), tn.basis_word(ctx, word))
    if args.format == "json":
        print(json.dumps(res.to_json(), sort_keys=True))
    else:
        for w in sorted(res.terms):
            print(f"  {res.terms[w]!r}  *  e_{list(w)}")
        if not res.terms:
            print("  0")
    return 0


def cmd_table(args):
    """CSV export of an orbit table or structure-constant table."""
    from . import oracle as orc
    cfg = orc.symmetric_config(args.q, args.d)
    flags = orc.enumerate_flags(cfg, "X", args.n)
    w = csv.writer(sys.stdout)
    if args.kind == "orbits":
        counts = {}
        for f1 in flags:
            for f2 in flags:
                A = orc.xx_invariant(cfg, args.n, f1, f2)
                counts[A] = counts.get(A, 0) + 1
        w.writerow(["matrix", "orbit_size"])
        for A in sorted(counts, key=ThetaMatrix.key):
            w.writerow([json.dumps([list(r) for r in A.rows]), counts[A]])
        return 0
    if args.kind == "constants":
        labels = ix.enumerate_tag(ix.Xi(args.n, args.d))
        reps = orc.rep_pairs_xx(cfg, args.n, flags, wanted=labels)
        w.writerow(["A", "A_prime", "A_dblprime", "count"])
        for App, pair in reps.items():
            row = orc.convolution_row(cfg, args.n, pair, flags)
            for (A, Ap), cnt in sorted(row.items(),
                                       key=lambda t: (t[0][0].key(), t[0][1].key())):
                w.writerow([json.dumps([list(r) for r in A.rows]),
                            json.dumps([list(r) for r in Ap.rows]),
                            json.dumps([list(r) for r in App.rows]), cnt])
        return 0
    raise ValidationError(f"unknown table kind {args.kind}")


# ---------------------------------------------------------------------------
# verification suites

def _suite_relations(args):
    checks = []
    n, d = args.n, args.d
    checks += [("schur-j " + c[0], c[1], c[2])
               for c in sc.relation_suite(sc.Context("schur-j", n, d))]
    checks += [("schur-i " + c[0], c[1], c[2])
               for c in sc.relation_suite(sc.Context("schur-i", n, d))]
    win = args.window
    checks += [("Uj " + c[0], c[1], c[2])
               for c in st.relation_suite_Uj(n, win)]
    if n >= 2:
        checks += [("Ui " + c[0], c[1], c[2])
                   for c in st.relation_suite_Ui(n, win)]
        lam = tuple([max(0, win[0] + 1)] * (n - 1)) + (2, 1, 2) + tuple(
            [max(0, win[0] + 1)] * (n - 1))
        rep = st.serre_t2f_displays(n, lam)
        for k in ("identity", "lhs_matches_display", "rhs_matches_display"):
            checks.append((f"Serre t2f {k}", rep[k], ""))
    return checks


def _suite_duality(args):
    from . import tensor as tn
    rep = tn.double_centralizer(args.n, args.d)
    checks = [("actions commute", rep["actions_commute"], "")]
    for e in rep["specializations"]:
        if args.n >= args.d:
            checks.append((f"schur image dim @v={e['v']}",
                           e["schur_image_dim"] == rep["xi_count"],
                           f"{e['schur_image_dim']} vs {rep['xi_count']}"))
            checks.append((f"double centralizer @v={e['v']}",
                           e.get("double_centralizer", False), str(e)))
    if args.n >= 2:
        irep = tn.iota_double_centralizer(args.n, args.d)
        checks.append(("iota actions commute", irep["actions_commute"], ""))
        for e in irep["specializations"]:
            if args.n >= args.d:
                checks.append((f"iota double centralizer @v={e['v']}",
                               e.get("double_centralizer", False), str(e)))
    return checks


def _suite_oracle(args):
    from . import oracle as orc
    checks = []
    for q in args.q:
        cfg = orc.symmetric_config(q, args.d)
        checks += orc.sj_table_check(cfg, args.n, args.d)
        checks += orc.hecke_action_check(cfg, args.n, args.d, "B")
        checks += orc.schur_action_check(cfg, args.n, args.d)
    return checks


def _suite_stabilization(args):
    from . import schur as scm
    n = args.n
    N = 2 * n + 1
    A = ThetaMatrix(n, [[1 if i != j else 1 for j in range(N)]
                        for i in range(N)])
    checks = []
    for kind in ("E", "F"):
        for h in range(1, n + 1):
            for R in (1, 2):
                x_, y_ = (h, h + 1) if kind == "E" else (h + 1, h)
                diag = list(A.ro())
                diag[y_ - 1] -= R
                diag[N - y_] -= R
                B = scm.GenFactor(kind, h, R, tuple(diag)).matrix(n)
                for shift in ("2p", "breve"):
                    fit, ok, _, _ = st.stabilization_check([B, A], shift)
                    checks.append(
                        (f"{shift} {kind} h={h} R={R}", ok and fit.stable,
                         f"stable={fit.stable} w1={ok}"))
    return checks


def _suite_compat(args):
    rng = random.Random(2024)
    checks = st.cb_compat_check(args.n, args.d)
    checks += st.sharp_iso_check(args.n, rng, samples=10)
    checks += st.chi_iso_check(args.n, rng, samples=10)
    checks += st.phi_d_homomorphism_check(args.n, args.d, rng, samples=20)
    return checks


def _suite_inner_product(args):
    from . import oracle as orc
    n, d = args.n, args.d
    ctx = sc.Context("schur-j", n, d)
    labels = ix.enumerate_tag(ix.Xi(n, d))
    checks = []
    for A in labels:
        ip = orc.inner_product_diagonal(n, d, A).shift(-2 * ix.d_lower(A))
        c = dict(ip.c)
        ok = c.pop(0, 0) == 1 and all(e < 0 for e in c)
        checks.append((f"([A],[A]) normalized @{A.key()}", ok, repr(ip)))
    rng = random.Random(9)
    good = 0
    for _ in range(20):
        A, A1, A2 = (rng.choice(labels) for _ in range(3))
        if A.co() != A1.ro():
            continue
        lhs = orc.inner_product_elements(
            n, d, sc.mul(sc.std(ctx, A), sc.e_basis(ctx, A1)),
            sc.e_basis(ctx, A2))
        tA = A.transpose()
        rhs_elt = (sc.mul(sc.std(ctx, tA), sc.e_basis(ctx, A2))
                   if tA.co() == A2.ro() else sc.Element(ctx))
        rhs = orc.inner_product_elements(n, d, sc.e_basis(ctx, A1), rhs_elt)
        ok = lhs == rhs.shift(ix.d_lower(A) - ix.d_lower(tA))
        checks.append(("adjunction sample", ok, ""))
        good += 1
    for A in labels:
        for B in labels:
            ip = orc.inner_product_elements(
                n, d, sc.canonical(ctx, A), sc.canonical(ctx, B))
            c = dict(ip.c)
            lead = c.pop(0, 0)
            ok = lead == (1 if A == B else 0) and all(e < 0 for e in c)
            checks.append(("almost orthonormality", ok, f"{A.key()},{B.key()}"))
    return checks


def _suite_typec(args):
    from . import oracle as orc
    checks = []
    for q in args.q:
        checks += orc.typeC_relabel_check(args.n, 1, q)
        checks += orc.hecke_action_check(orc.skew_config(q, args.d),
                                         args.n, args.d, "C")
    return checks


SUITES = {
    "relations": _suite_relations,
    "duality": _suite_duality,
    "oracle": _suite_oracle,
    "stabilization": _suite_stabilization,
    "compat": _suite_compat,
    "inner-product": _suite_inner_product,
    "typec": _suite_typec,
}


def cmd_verify(args):
    fn = SUITES.get(args.suite)
    if fn is None:
        raise ValidationError(f"unknown suite {args.suite}; "
                              f"choose from {sorted(SUITES)}")
    checks = fn(args)
    failures = [c for c in checks if not c[1]]
    report = {
        "suite": args.suite,
        "n": args.n, "d": args.d,
        "total": len(checks),
        "failures": [{"name": c[0], "detail": c[2]} for c in failures],
        "pass": not failures,
    }
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        print(f"suite {args.suite}: {len(checks)} checks, "
              f"{len(failures)} failures")
        for c in failures[:20]:
            print(f"  FAIL {c[0]}  {c[2][:160]}")
    return 0 if not failures else 3


def build_parser():
    p = argparse.ArgumentParser(
        prog="thetaschur",
        description="Exact type B/C q-Schur algebra engine")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, d_required=False, family=True):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--d", type=int, default=None,
                        required=d_required)
        if family:
            sp.add_argument("--family", default="schur-j",
                            choices=sorted(FAMILIES))
        sp.add_argument("--format", default="pretty",
                        choices=["pretty", "json", "csv"])

    sp = sub.add_parser("enumerate", help="list a finite label set")
    sp.add_argument("--set", required=True, choices=["xi", "ixi", "pi", "ipi"])
    common(sp, d_required=True, family=False)
    sp.set_defaults(fn=cmd_enumerate)

    sp = sub.add_parser("mul", help="multiply two standard basis elements")
    common(sp)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.set_defaults(fn=cmd_mul)

    sp = sub.add_parser("monomial", help="monomial basis element")
    common(sp)
    sp.add_argument("--matrix", required=True)
    sp.set_defaults(fn=cmd_monomial)

    sp = sub.add_parser("bar", help="bar involution of a standard element")
    common(sp)
    sp.add_argument("--matrix", required=True)
    sp.set_defaults(fn=cmd_bar)

    sp = sub.add_parser("canonical", help="canonical basis element (cached)")
    common(sp)
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--cache-dir", default=None)
    sp.set_defaults(fn=cmd_canonical)

    sp = sub.add_parser("act", help="act on a tensor-module word")
    common(sp, d_required=True, family=False)
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--word", required=True)
    sp.set_defaults(fn=cmd_act)

    sp = sub.add_parser("table", help="CSV export of oracle tables")
    common(sp, d_required=True, family=False)
    sp.add_argument("--kind", required=True, choices=["orbits", "constants"])
    sp.add_argument("--q", type=int, default=3)
    sp.set_defaults(fn=cmd_table)

    sp = sub.add_parser("verify", help="run a named verification suite")
    sp.add_argument("suite", choices=sorted(SUITES))
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--q", type=int, nargs="+", default=[3])
    sp.add_argument("--window", type=int, nargs=2, default=(-2, 4))
    sp.add_argument("--format", default="pretty", choices=["pretty", "json"])
    sp.set_defaults(fn=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.fn(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (sc.LabelError, sc.WeightMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # computation failure
        print(f"computation failed: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 3
    return code


if __name__ == "__main__":
    sys.exit(main())
