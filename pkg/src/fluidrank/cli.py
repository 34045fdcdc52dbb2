"""Command-line front end.

Subcommands: ``stats``, ``rank``, ``bench``, ``compare``. All tables are
tab-separated with one ``#`` header line. Exit codes: 0 success, 2 input
parse error, 3 invalid flags, 4 numeric failure.
"""

import argparse
import sys
from contextlib import contextmanager

import numpy as np

from .analysis import canonical_order, fr_scores, loc_scores, top_overlap
from .diffusion import Custom, DiffusionConfig, Uniform, run_diffusion
from .exceptions import GraphParseError, NodeRangeError, NumericError
from .graph import compute_stats, read_edge_list

EXIT_PARSE = 2
EXIT_FLAGS = 3
EXIT_NUMERIC = 4

METHODS = ("fi", "di", "jacobi", "loc")
DEFAULT_FRACTIONS = ",".join(f"{k / 100:g}" for k in range(1, 101))


class CliError(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FLAGS, f"{self.prog}: error: {message}\n")


def _fmt(x):
    return f"{x:.12g}"


@contextmanager
def _open_out(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            yield fh


def _load(path, nodes):
    try:
        return read_edge_list(path, node_limit=nodes)
    except (GraphParseError, NodeRangeError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None
    except OSError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None


def _float_list(text, name):
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise CliError(EXIT_FLAGS, f"--{name}: not a comma-separated list of numbers: {text!r}") from None
    if not values:
        raise CliError(EXIT_FLAGS, f"--{name}: empty list")
    return values


def _epsilon(text, n):
    if text is None or text == "auto":
        return 1.0 / max(n, 1)
    try:
        eps = float(text)
    except ValueError:
        raise CliError(EXIT_FLAGS, f"--epsilon: expected a number or 'auto', got {text!r}") from None
    if not eps > 0:
        raise CliError(EXIT_FLAGS, "--epsilon must be > 0")
    return eps


def _check_damping(d):
    if not 0.0 < d < 1.0:
        raise CliError(EXIT_FLAGS, f"--damping must lie in (0, 1), got {d}")


def _run_method(g, method, d, alpha=1.0, beta=1.0, epsilon=None, stop_rule="bounded"):
    """Return ``(DiffusionResult or None, cost, diffusions)`` for one method."""
    if method == "loc":
        return None, 0.0, 0
    if method == "fi":
        cfg = DiffusionConfig(d=d, beta=beta, initial_fluid=Uniform(alpha))
    else:
        f0 = Custom(np.full(g.n, (1.0 - d) / max(g.n, 1)))
        cfg = DiffusionConfig(
            d=d, beta=0.0, initial_fluid=f0, epsilon=epsilon,
            schedule="sync" if method == "jacobi" else "cyclic", stop_rule=stop_rule,
        )
    try:
        result = run_diffusion(g, cfg)
    except NumericError as exc:
        raise CliError(EXIT_NUMERIC, str(exc)) from None
    return result, result.cost_iterations, result.diffusions


def cmd_stats(args):
    g = _load(args.graph, args.nodes)
    s = compute_stats(g)
    ratios = "\t".join(f"{r:.3f}" for r in s.ratios())
    print("#N\tL\tL/N\tD/N\tE/N\tO/N\tmax_in\tmax_out")
    print(f"{s.n}\t{s.l}\t{ratios}\t{s.max_in}\t{s.max_out}")


def cmd_rank(args):
    method = args.method
    if method != "fi":
        for flag in ("alpha", "beta", "score"):
            if getattr(args, flag) is not None:
                raise CliError(EXIT_FLAGS, f"--{flag} only applies to --method fi")
    if method not in ("di", "jacobi"):
        for flag, value in (("epsilon", args.epsilon), ("stop-rule", args.stop_rule)):
            if value is not None:
                raise CliError(EXIT_FLAGS, f"--{flag} only applies to --method di or jacobi")
    _check_damping(args.damping)
    alpha = 1.0 if args.alpha is None else args.alpha
    beta = 1.0 if args.beta is None else args.beta
    if method == "fi" and not (alpha > 0 and beta > 0):
        raise CliError(EXIT_FLAGS, "--alpha and --beta must be > 0")

    g = _load(args.graph, args.nodes)
    result, cost, diffusions = _run_method(
        g, method, args.damping, alpha=alpha, beta=beta,
        epsilon=_epsilon(args.epsilon, g.n), stop_rule=args.stop_rule or "bounded",
    )
    if method == "loc":
        scores = loc_scores(g).scores
    elif method == "fi":
        scores = fr_scores(result, include_fluid=(args.score or "h+f") == "h+f").scores
    else:
        scores = result.h

    with _open_out(args.output) as fh:
        fh.write("#node\tscore\n")
        for i in canonical_order(scores):
            fh.write(f"{i}\t{_fmt(scores[i])}\n")
    if args.trace is not None:
        with _open_out(args.trace) as fh:
            fh.write("#cost_iterations\tresidual\n")
            if result is not None:
                for c, r in result.trace.samples:
                    fh.write(f"{_fmt(c)}\t{_fmt(r)}\n")
    summary = sys.stderr if args.output == "-" else sys.stdout
    print("#method\tcost_iterations\tdiffusions", file=summary)
    print(f"{method}\t{_fmt(cost)}\t{diffusions}", file=summary)


def cmd_bench(args):
    dampings = _float_list(args.damping, "damping")
    for d in dampings:
        _check_damping(d)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            raise CliError(EXIT_FLAGS, f"--methods: unknown method {m!r}")
    alphas = _float_list(args.alpha, "alpha")
    if any(not a > 0 for a in alphas):
        raise CliError(EXIT_FLAGS, "--alpha values must be > 0")

    g = _load(args.graph, args.nodes)
    epsilon = _epsilon(args.epsilon, g.n)
    print("#damping\tmethod\talpha\tcost_iterations\tdiffusions")
    for d in dampings:
        for m in methods:
            for alpha in alphas if m == "fi" else [None]:
                _, cost, diffusions = _run_method(
                    g, m, d, alpha=alpha or 1.0, epsilon=epsilon, stop_rule=args.stop_rule,
                )
                label = "-" if alpha is None else f"{alpha:g}"
                print(f"{d:g}\t{m}\t{label}\t{_fmt(cost)}\t{diffusions}")


def read_scores(path):
    """Read a ``node<TAB>score`` file into a dict."""
    scores = {}
    try:
        with open(path, encoding="ascii") as fh:
            for lineno, line in enumerate(fh, start=1):
                stripped = line.strip()
                if not stripped or stripped.startswith("#"):
                    continue
                tokens = stripped.split()
                if len(tokens) != 2:
                    raise GraphParseError(lineno, f"expected 2 tokens, got {len(tokens)}")
                try:
                    node, score = int(tokens[0]), float(tokens[1])
                except ValueError:
                    raise GraphParseError(lineno, f"bad node or score: {stripped!r}") from None
                if not np.isfinite(score):
                    raise GraphParseError(lineno, f"non-finite score: {tokens[1]!r}")
                if node in scores:
                    raise GraphParseError(lineno, f"duplicate node {node}")
                scores[node] = score
    except GraphParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None
    except OSError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    return scores


def cmd_compare(args):
    fractions = _float_list(args.fractions, "fractions")
    if any(not 0.0 < f <= 1.0 for f in fractions):
        raise CliError(EXIT_FLAGS, "--fractions values must lie in (0, 1]")
    a, b = read_scores(args.a), read_scores(args.b)
    if a.keys() != b.keys():
        raise CliError(EXIT_FLAGS, "score files cover different node sets")
    if not a:
        raise CliError(EXIT_FLAGS, "score files are empty")
    nodes = sorted(a)
    curve = top_overlap(
        np.array([a[i] for i in nodes]), np.array([b[i] for i in nodes]), fractions,
    )
    print("#fraction\toverlap")
    for frac, overlap in curve.points:
        print(f"{frac:g}\t{_fmt(overlap)}")


def build_parser():
    parser = _Parser(prog="fluidrank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="graph statistics")
    p.add_argument("--graph", required=True)
    p.add_argument("--nodes", type=int, default=None, help="keep only the first N nodes")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("rank", help="compute a ranking")
    p.add_argument("--graph", required=True)
    p.add_argument("--nodes", type=int, default=None)
    p.add_argument("--method", required=True, choices=METHODS)
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--alpha", type=float, default=None, help="fi only (default 1.0)")
    p.add_argument("--beta", type=float, default=None, help="fi only (default 1.0)")
    p.add_argument("--epsilon", default=None, help="di/jacobi only; 'auto' means 1/N")
    p.add_argument("--stop-rule", choices=("bounded", "naive"), default=None)
    p.add_argument("--score", choices=("h+f", "h"), default=None, help="fi only (default h+f)")
    p.add_argument("--trace", default=None)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("bench", help="cost table over damping factors and methods")
    p.add_argument("--graph", required=True)
    p.add_argument("--nodes", type=int, default=None)
    p.add_argument("--damping", default="0.85")
    p.add_argument("--methods", default="jacobi,di,fi")
    p.add_argument("--alpha", default="1")
    p.add_argument("--epsilon", default="auto")
    p.add_argument("--stop-rule", choices=("bounded", "naive"), default="bounded")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("compare", help="top-x%% overlap of two score files")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--fractions", default=DEFAULT_FRACTIONS)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "nodes", None) is not None and args.nodes <= 0:
        print("fluidrank: error: --nodes must be a positive integer", file=sys.stderr)
        return EXIT_FLAGS
    try:
        args.func(args)
    except CliError as exc:
        print(f"fluidrank: error: {exc}", file=sys.stderr)
        return exc.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
