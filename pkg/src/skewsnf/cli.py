"""Command line front end.

    skewsnf incidence --p 2 --t 1 --n 4 --r 2 --s 2 --relation skew -o A.txt
    skewsnf profile --source formula --p 3 --t 2
    skewsnf verify identities --p 2 --t 1
    skewsnf table --p 3 --t 2

``--n`` is the dimension n+1 of the ambient vector space.  Exit codes: 0 on
success, 1 when a verification check fails, 2 for bad parameters.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import tempfile
import time
from pathlib import Path

import numpy as np
from sympy import isprime

from . import exact_linalg as xl
from . import formulas as fm
from .field import TABLE_LIMIT
from .geometry import MEET, RELATIONS, SKEW, build_incidence, make_geometry, parse_matrix
from .profile import DivisorProfile

CACHE_ENV = "SKEWSNF_CACHE"
DEFAULT_MAX_SIDE = 1200
DEFAULT_ORACLE_SIDE = 200


class UsageError(Exception):
    pass


# -- parameters -------------------------------------------------------------------


def _validate(args) -> None:
    if not isprime(args.p):
        raise UsageError(f"--p {args.p} is not prime")
    if args.t < 1:
        raise UsageError(f"--t {args.t} must be at least 1")
    if args.p**args.t > TABLE_LIMIT:
        raise UsageError(f"q = {args.p}^{args.t} exceeds the supported bound q <= {TABLE_LIMIT}")
    if args.n < 2:
        raise UsageError(f"--n {args.n} (dimension of V) must be at least 2")
    n = args.n - 1
    for flag in ("r", "s"):
        val = getattr(args, flag)
        if not 1 <= val <= n:
            raise UsageError(f"--{flag} {val} violates 1 <= {flag} <= n = {n} (the ambient dimension --n is {args.n})")


def _geometry(args):
    return make_geometry(args.p, args.t, args.n)


def _side(args, r, s) -> int:
    q = args.p**args.t
    return max(fm.q_binomial(args.n, r, q), fm.q_binomial(args.n, s, q))


def _check_size(args, side: int) -> None:
    if side > args.max_side:
        raise UsageError(
            f"matrix side {side} exceeds the compute limit {args.max_side}; "
            f"rerun with --max-side {side} to allow it"
        )


# -- cache ------------------------------------------------------------------------


def _cache_root(args) -> Path | None:
    root = args.cache_dir or os.environ.get(CACHE_ENV)
    return Path(root) if root else None


def _entry_dir(args, r, s, relation) -> Path | None:
    root = _cache_root(args)
    if root is None:
        return None
    return root / f"p{args.p}-t{args.t}-n{args.n}-r{r}-s{s}-{relation}"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def cache_status(entry: Path | None) -> str:
    """'absent', 'ok' or 'corrupt' for the cached matrix in ``entry``."""
    if entry is None:
        return "absent"
    mfile, cfile = entry / "matrix.txt", entry / "matrix.txt.sha256"
    if not mfile.exists():
        return "absent"
    if not cfile.exists():
        return "corrupt"
    return "ok" if _sha256(mfile.read_text()) == cfile.read_text().strip() else "corrupt"


def load_matrix(args, r: int, s: int, relation: str = SKEW):
    """Incidence matrix for the current parameters, through the cache when one is configured."""
    entry = _entry_dir(args, r, s, relation)
    status = cache_status(entry)
    if status == "ok":
        return parse_matrix((entry / "matrix.txt").read_text())
    if status == "corrupt":
        print(f"warning: checksum mismatch for cached {entry / 'matrix.txt'}; regenerating", file=sys.stderr)
    mat = build_incidence(_geometry(args), r, s, relation)
    if entry is not None:
        text = mat.to_text()
        _atomic_write(entry / "matrix.txt", text)
        _atomic_write(entry / "matrix.txt.sha256", _sha256(text) + "\n")
    return mat


def _emit(args, text: str) -> None:
    if args.output:
        _atomic_write(Path(args.output), text)
    else:
        sys.stdout.write(text)


# -- profiles -----------------------------------------------------------------------


def _is_pg3_lines(args) -> bool:
    return args.n == 4 and args.r == 2 and args.s == 2


def formula_profile(args) -> DivisorProfile:
    n = args.n - 1
    if args.matrix == "product":
        return fm.theoremC_profile(n, args.t, args.p, args.r, args.s)
    if not _is_pg3_lines(args):
        raise UsageError(
            "the full closed-form profile of A_{r,s} is only known for --n 4 --r 2 --s 2; "
            "use --matrix product or --source compute"
        )
    return fm.theoremA_full_profile(args.t, args.p)


def _matrix_for(args) -> np.ndarray:
    if args.matrix == "product":
        _check_size(args, _side(args, args.r, args.s))
        left = load_matrix(args, args.r, 1).to_int()
        right = load_matrix(args, 1, args.s).to_int()
        return xl.mat_mul(left, right)
    _check_size(args, _side(args, args.r, args.s))
    return load_matrix(args, args.r, args.s, args.relation).to_int()


def computed_profile(args) -> DivisorProfile:
    return xl.p_elementary_divisors(_matrix_for(args), args.p)


def get_profile(args) -> DivisorProfile:
    if args.source == "formula":
        return formula_profile(args)
    entry = _entry_dir(args, args.r, args.s, args.relation)
    name = f"profile-{args.matrix}-compute.json"
    if entry is not None and (entry / name).exists() and cache_status(entry) == "ok":
        return DivisorProfile.from_json((entry / name).read_text())
    prof = computed_profile(args)
    if entry is not None:
        _atomic_write(entry / name, prof.to_json() + "\n")
    return prof


def _profile_csv(prof: DivisorProfile) -> str:
    lines = ["exponent,multiplicity"] + [f"{i},{e}" for i, e in prof.mult.items()]
    return "\n".join(lines) + "\n"


def render_table(prof: DivisorProfile) -> str:
    """Two-row table of the nonzero multiplicities in increasing exponent order."""
    p = prof.p
    heads = ["Elem. Div."] + [("1" if i == 0 else str(p) if i == 1 else f"{p}^{i}") for i in prof.mult]
    vals = ["Multiplicity"] + [str(e) for e in prof.mult.values()]
    widths = [max(len(a), len(b)) for a, b in zip(heads, vals)]
    first = [heads[0].ljust(widths[0])] + [h.rjust(w) for h, w in zip(heads[1:], widths[1:])]
    second = [vals[0].ljust(widths[0])] + [v.rjust(w) for v, w in zip(vals[1:], widths[1:])]
    return "  ".join(first) + "\n" + "  ".join(second) + "\n"


# -- verification suites ------------------------------------------------------------------


class Report:
    def __init__(self):
        self.rows: list[tuple[str, str, float, str]] = []

    def check(self, name: str, fn) -> None:
        start = time.perf_counter()
        try:
            ok, detail = fn()
            status = "PASS" if ok else "FAIL"
        except UsageError as exc:
            status, detail = "SKIP", str(exc)
        except Exception as exc:  # report, keep going
            status, detail = "FAIL", f"{type(exc).__name__}: {exc}"
        self.rows.append((status, name, time.perf_counter() - start, detail))

    def skip(self, name: str, why: str) -> None:
        self.rows.append(("SKIP", name, 0.0, why))

    @property
    def ok(self) -> bool:
        return all(status != "FAIL" for status, *_ in self.rows)

    def render(self, timings: bool = True) -> str:
        out = []
        for status, name, secs, detail in self.rows:
            line = f"{status}  {name}"
            if timings:
                line += f"  ({secs:.2f}s)"
            if detail and status != "PASS":
                line += f"  {detail}"
            out.append(line)
        passed = sum(1 for r in self.rows if r[0] == "PASS")
        failed = sum(1 for r in self.rows if r[0] == "FAIL")
        out.append(f"{passed} passed, {failed} failed, {len(self.rows) - passed - failed} skipped")
        return "\n".join(out) + "\n"


def _is_zero(M) -> tuple[bool, str]:
    nz = int(np.count_nonzero(np.asarray(M) != 0))
    return nz == 0, "" if nz == 0 else f"{nz} nonzero residual entries"


def _suite_cache(args, report: Report) -> None:
    for r, s, rel in ((args.r, args.s, SKEW), (args.r, args.s, MEET), (args.r, 1, SKEW), (1, args.s, SKEW)):
        entry = _entry_dir(args, r, s, rel)
        status = cache_status(entry)
        if status != "absent":
            report.check(
                f"cache-checksum[{entry.name}]",
                lambda status=status: (status == "ok", "" if status == "ok" else "checksum mismatch"),
            )


def suite_identities(args, report: Report) -> None:
    q, p, t = args.p**args.t, args.p, args.t
    r, s = args.r, args.s
    _check_size(args, _side(args, r, s))
    A = load_matrix(args, r, s).to_int()

    def skew_plus_meet():
        meet = load_matrix(args, r, s, MEET).to_int()
        return _is_zero(A + meet - 1)

    def congruence():
        prod = xl.mat_mul(load_matrix(args, r, 1).to_int(), load_matrix(args, 1, s).to_int())
        return xl.congruent_mod(prod, -A, p, t), ""

    report.check(f"skew-plus-meet-is-J[r={r},s={s}]", skew_plus_meet)
    report.check(f"product-congruent-to-minus-A[mod {p}^{t}]", congruence)
    if not _is_pg3_lines(args):
        report.skip("srg-identity", "needs --n 4 --r 2 --s 2")
        report.skip("points-lines-identity", "needs --n 4 --r 2 --s 2")
        return
    I = np.eye(A.shape[0], dtype=np.int64)
    J = np.ones_like(A)

    def srg_identity():
        A2 = xl.mat_mul(A, A)
        res = xl.mat_identity_residual(
            [1, -(q**4), -(q**4 - q**3 - q**2 + q), -(q**4 - q**3)], [A2, I, A, J - A - I]
        )
        return _is_zero(res)

    def points_lines_identity():
        B = load_matrix(args, 1, 2).to_int()
        BtB = xl.mat_mul(B.T, B)
        res = xl.mat_identity_residual(
            [1, -(q**3 + q**2), -(q**3 + q**2 - q - 1), -(q**3 + q**2 - q)], [BtB, I, A, J - A - I]
        )
        return _is_zero(res)

    report.check("srg-identity", srg_identity)
    report.check("points-lines-identity", points_lines_identity)


def suite_oracle(args, report: Report) -> None:
    p, t, n = args.p, args.t, args.n - 1
    r, s = args.r, args.s
    _check_size(args, _side(args, r, s))
    A = load_matrix(args, r, s).to_int()
    local_A = xl.p_elementary_divisors(A, p)

    if _is_pg3_lines(args):
        report.check(
            "formula-vs-local[A]",
            lambda: _compare(fm.theoremA_full_profile(t, p), local_A),
        )
    else:
        report.skip("formula-vs-local[A]", "full profile known only for --n 4 --r 2 --s 2")

    prod = xl.mat_mul(load_matrix(args, r, 1).to_int(), load_matrix(args, 1, s).to_int())
    local_prod = xl.p_elementary_divisors(prod, p)
    report.check("formula-vs-local[A_r1*A_1s]", lambda: _compare(fm.theoremC_profile(n, t, p, r, s), local_prod))

    def low_exponents():
        expected = fm.corollary_pranks(n, t, p, r, s)
        got = {i: local_A[i] for i in range(t)}
        return got == expected, f"expected {expected}, got {got}"

    report.check("low-exponents[A]", low_exponents)
    report.check("p-rank[A]", lambda: (xl.p_rank(A, p) == local_A[0], ""))

    if max(A.shape) <= args.oracle_side:
        report.check("snf-vs-local[A]", lambda: _compare(xl.snf_profile(A, p), local_A))
        report.check("snf-vs-local[A_r1*A_1s]", lambda: _compare(xl.snf_profile(prod, p), local_prod))
    else:
        report.skip("snf-vs-local", f"side {max(A.shape)} above --oracle-side {args.oracle_side}")


def _compare(expected: DivisorProfile, got: DivisorProfile) -> tuple[bool, str]:
    if expected == got:
        return True, ""
    return False, f"expected {expected.mult}, got {got.mult}"


def suite_formulas(args, report: Report) -> None:
    p, t, N = args.p, args.t, args.n
    q, n = p**t, N - 1

    def dk_identities():
        table = fm.dk_table(p, N)  # raises on convolution/alternating-sum mismatch
        d = list(table.d)
        return d == d[::-1] and sum(d) == p**N, ""

    def tuple_weight_total():
        total = sum(h.d for h in fm.hamada_set(n, t, p))
        expected = (q**N - 1) // (q - 1) - 1
        return total == expected, f"{total} vs {expected}"

    def upper_exponent_total():
        total = sum(fm.theoremB_values(t, p).values())
        return total == q**3 + q**2 + q, f"{total}"

    def lines_profile_shape():
        prof = fm.theoremA_full_profile(t, p)
        sym = all(prof[i] == prof[3 * t - i] for i in range(t))
        v = fm.srg_spectrum(q).v
        return sym and prof.total == v and prof.valuation == fm.determinant_valuation(t, q), ""

    def product_profile_total():
        # every weighted tuple falls in exactly one Gamma(i), plus the top divisor
        total = fm.theoremC_profile(n, t, p, args.r, args.s).total
        return total == fm.q_binomial(N, 1, q), f"{total}"

    report.check(f"dk-dual-palindrome-sum[p={p},n+1={N}]", dk_identities)
    report.check("tuple-weight-total", tuple_weight_total)
    report.check("upper-exponent-total", upper_exponent_total)
    report.check("lines-profile-symmetry-and-totals", lines_profile_shape)
    report.check(f"product-profile-total[r={args.r},s={args.s}]", product_profile_total)
    report.check("srg-feasibility", lambda: (_srg_ok(q), ""))


def _srg_ok(q: int) -> bool:
    g = fm.srg_spectrum(q)
    return g.k * (g.k - g.lam - 1) == (g.v - g.k - 1) * g.mu and sum(g.multiplicities) == g.v


SUITES = {"identities": suite_identities, "oracle": suite_oracle, "formulas": suite_formulas}


# -- commands -------------------------------------------------------------------------


def cmd_incidence(args) -> int:
    _check_size(args, _side(args, args.r, args.s))
    mat = load_matrix(args, args.r, args.s, args.relation)
    _emit(args, mat.to_text())
    return 0


def cmd_profile(args) -> int:
    prof = get_profile(args)
    _emit(args, _profile_csv(prof) if args.format == "csv" else prof.to_json() + "\n")
    return 0


def cmd_table(args) -> int:
    prof = get_profile(args)
    if args.format == "json":
        text = prof.to_json() + "\n"
    elif args.format == "csv":
        text = _profile_csv(prof)
    else:
        text = render_table(prof)
    _emit(args, text)
    return 0


def cmd_verify(args) -> int:
    report = Report()
    _suite_cache(args, report)
    SUITES[args.suite](args, report)
    _emit(args, report.render(timings=not args.no_timings))
    return 0 if report.ok else 1


# -- argument parsing -------------------------------------------------------------------


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, default=2, help="characteristic (prime)")
    parser.add_argument("--t", type=int, default=1, help="q = p^t")
    parser.add_argument("--n", type=int, default=4, help="dimension n+1 of the ambient space V")
    parser.add_argument("--r", type=int, default=2, help="row subspace dimension")
    parser.add_argument("--s", type=int, default=2, help="column subspace dimension")
    parser.add_argument("--relation", choices=RELATIONS, default=SKEW)
    parser.add_argument("--cache-dir", default=None, help=f"artifact cache (default: ${CACHE_ENV})")
    parser.add_argument("--max-side", type=int, default=DEFAULT_MAX_SIDE, help="refuse larger computations")
    parser.add_argument("-o", "--output", default=None, help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skewsnf", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("incidence", help="write the incidence matrix file")
    _common(p)
    p.set_defaults(func=cmd_incidence)

    for name, func, fmt_default, help_ in (
        ("profile", cmd_profile, "json", "elementary divisor profile as JSON"),
        ("table", cmd_table, "text", "elementary divisor table"),
    ):
        p = sub.add_parser(name, help=help_)
        _common(p)
        p.add_argument("--source", choices=("formula", "compute"), default="formula")
        p.add_argument(
            "--matrix", choices=("skew", "product"), default="skew",
            help="skew: A_{r,s} itself; product: A_{r,1} A_{1,s}",
        )
        p.add_argument("--format", choices=("text", "json", "csv"), default=fmt_default)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    _common(p)
    p.add_argument("--oracle-side", type=int, default=DEFAULT_ORACLE_SIDE, help="largest side for the full SNF oracle")
    p.add_argument("--no-timings", action="store_true", help="omit timings for byte-stable reports")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
