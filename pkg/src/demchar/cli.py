"""Command-line front end.

Subcommands compute crystal graphs, step-by-step characters, window
sums, tableau polynomials, string-function limits, verification suites,
and the non-admissible-letter decomposition search.  Every command
writes deterministic output: identical inputs give byte-identical
bytes, regardless of the --threads setting.

Exit codes: 0 success, 2 bad configuration, 3 verification mismatch,
4 resource guard tripped.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

from .crystals import PerfectCrystal, perfect_crystal, verify_perfect
from .demazure import (
    DemazureSchedule,
    character_by_operators,
    character_by_paths,
    demazure_schedule,
)
from .formulas import verify_type
from .onedsums import (
    StabilizationGuardError,
    WeylSumGuardError,
    character_at_full_segment,
    check_disjoint_decomposition,
    g_enumerate,
    g_recursive,
    kostka,
    stabilized_limit,
    x_by_weyl_sum,
    x_enumerate,
    x_recursive,
)
from .paths import scheduled_nodes
from .qring import LaurentPoly
from .weights import FormalCharacter, Weight, dominant_classical_weights

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_MISMATCH = 3
EXIT_GUARD = 4


class ConfigError(Exception):
    """Bad command-line input; reported on stderr with exit code 2."""


# ---------------------------------------------------------------------------
# Parsing helpers


def _crystal(family: str, rank: int) -> PerfectCrystal:
    try:
        return perfect_crystal(family, rank)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_weight(text: str, size: int) -> Weight:
    """A weight token: either L<i> for a fundamental weight or a
    comma-separated coordinate list over all nodes."""
    text = text.strip()
    if text.upper().startswith("L") and "," not in text:
        try:
            node = int(text[1:])
        except ValueError as exc:
            raise ConfigError(f"bad weight token {text!r}") from exc
        if not 0 <= node < size:
            raise ConfigError(
                f"node {node} out of range; this diagram has nodes 0..{size - 1}"
            )
        coords = [0] * size
        coords[node] = 1
        return Weight(tuple(coords))
    try:
        coords = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad weight token {text!r}") from exc
    if len(coords) != size:
        raise ConfigError(
            f"weight {text!r} has {len(coords)} coordinates, expected {size}"
        )
    return Weight(coords)


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad integer list {text!r}") from exc


def _require_letter(crystal: PerfectCrystal, b: str) -> str:
    if b not in crystal.elements:
        raise ConfigError(
            f"letter {b!r} is not in the alphabet {list(crystal.elements)}"
        )
    return b


# ---------------------------------------------------------------------------
# Highest-weight relabeling through diagram symmetry


def _cartan_permutations(crystal: PerfectCrystal) -> list[tuple[int, ...]]:
    size = crystal.cartan.size
    a = crystal.cartan.matrix
    return [
        perm
        for perm in itertools.permutations(range(size))
        if all(
            a[perm[i]][perm[j]] == a[i][j]
            for i in range(size)
            for j in range(size)
        )
    ]


def _crystal_twist(crystal: PerfectCrystal, perm: tuple[int, ...]):
    """A letter bijection intertwining each arrow i with arrow perm[i],
    or None when the relabeled graph is not isomorphic to the original."""
    elements = crystal.elements
    index_set = crystal.cartan.index_set
    start = elements[0]
    for image in elements:
        sigma = {start: image}
        queue = [start]
        ok = True
        while queue and ok:
            b = queue.pop()
            for i in index_set:
                for step in (crystal.f, crystal.e):
                    nb = step(i, b)
                    tb = step(perm[i], sigma[b])
                    if (nb is None) != (tb is None):
                        ok = False
                        break
                    if nb is None:
                        continue
                    if nb in sigma:
                        if sigma[nb] != tb:
                            ok = False
                            break
                    else:
                        sigma[nb] = tb
                        queue.append(nb)
                if not ok:
                    break
        if ok and len(sigma) == len(elements) and len(set(sigma.values())) == len(
            elements
        ):
            return sigma
    return None


def _resolve_scheduled_node(family: str, rank: int, node: int):
    """Map a requested fundamental-weight node onto one with a growth
    schedule, through a diagram symmetry that also relabels the crystal.

    Returns (scheduled node, node permutation) where permutation sends
    the requested node to the scheduled one; identity when no relabeling
    is needed.
    """
    crystal = _crystal(family, rank)
    size = crystal.cartan.size
    if not 0 <= node < size:
        raise ConfigError(
            f"node {node} out of range; this diagram has nodes 0..{size - 1}"
        )
    available = scheduled_nodes(family, rank)
    identity = tuple(range(size))
    if node in available:
        return node, identity
    for perm in _cartan_permutations(crystal):
        if perm[node] in available and _crystal_twist(crystal, perm) is not None:
            return perm[node], perm
    raise ConfigError(
        f"no growth schedule for node {node} of {family} rank {rank}, and no "
        f"diagram symmetry maps it onto one of {list(available)}"
    )


def _delta_corrections(ct, perm: tuple[int, ...]) -> tuple[Fraction, ...]:
    """Null-root offsets c_i such that the lattice map sending each
    simple root alpha_i to alpha_{perm[i]} sends the i-th fundamental
    weight to the perm[i]-th plus c_i times the null root.

    Solves sum_i c_i A[i][j] = d_{perm[j]} - d_j where d_j is the
    null-root coefficient of alpha_j; any solution works, because the
    residual freedom cancels on weights of equal level once the top
    term is re-anchored.
    """
    size = ct.size
    d = [ct.simple_root(j).delta_coord for j in range(size)]
    rhs = [d[perm[j]] - d[j] for j in range(size)]
    m = [
        [Fraction(ct.matrix[i][j]) for i in range(size)] + [Fraction(rhs[j])]
        for j in range(size)
    ]
    pivots = []
    row = 0
    for col in range(size):
        pivot = next((r for r in range(row, size) if m[r][col]), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        scale = m[row][col]
        m[row] = [x / scale for x in m[row]]
        for r in range(size):
            if r != row and m[r][col]:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[row])]
        pivots.append((row, col))
        row += 1
    for r in range(row, size):
        if m[r][size]:
            raise ConfigError("diagram symmetry does not lift to the weight lattice")
    c = [Fraction(0)] * size
    for r, col in pivots:
        c[col] = m[r][size]
    for j in range(size):
        total = sum(c[i] * ct.matrix[i][j] for i in range(size))
        assert total + d[j] == d[perm[j]]
    return tuple(c)


def _transport(
    chi: FormalCharacter, perm: tuple[int, ...], ct, requested: int
) -> FormalCharacter:
    """Pull a character back along a node permutation.

    Coordinates permute (node i of the result reads node perm[i] of the
    input); null-root coordinates pick up the lattice-map corrections,
    re-anchored so the requested fundamental weight sits at offset zero.
    """
    if perm == tuple(range(len(perm))):
        return chi
    c = _delta_corrections(ct, perm)
    coeffs = {}
    for weight, coeff in chi.terms():
        u = weight.lambda_coords
        coords = tuple(u[perm[i]] for i in range(len(perm)))
        delta = (
            weight.delta_coord
            - sum(u[perm[i]] * c[i] for i in range(len(perm)))
            + c[requested]
        )
        coeffs[Weight(coords, delta)] = coeff
    return FormalCharacter(coeffs)


def _parse_lambda_node(text: str, size: int) -> int:
    text = text.strip()
    if not text.upper().startswith("L"):
        raise ConfigError(f"highest weights are selected by node token L0..L{size - 1}")
    try:
        return int(text[1:])
    except ValueError as exc:
        raise ConfigError(f"bad weight token {text!r}") from exc


# ---------------------------------------------------------------------------
# Output helpers


def _poly_obj(poly: LaurentPoly) -> dict:
    return {
        "terms": [[str(exp), coeff] for exp, coeff in poly.terms()],
        "display": str(poly),
    }


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _poly_rows(poly: LaurentPoly) -> list[list]:
    return [[str(exp), coeff] for exp, coeff in poly.terms()]


def _character_rows(chi: FormalCharacter) -> list[list]:
    return [
        [
            " ".join(str(c) for c in weight.lambda_coords),
            str(weight.delta_coord),
            coeff,
        ]
        for weight, coeff in chi.terms()
    ]


def _emit(text: str, out: str | None) -> None:
    data = text.encode("utf-8")
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def _want(args, default: str) -> str:
    return args.format if args.format else default


# ---------------------------------------------------------------------------
# Subcommands


def cmd_graph(args) -> int:
    crystal = _crystal(args.type, args.rank)
    fmt = _want(args, "dot")
    edges = []
    for i in crystal.cartan.index_set:
        for b in crystal.elements:
            target = crystal.f(i, b)
            if target is not None:
                edges.append((b, target, i))
    if fmt == "dot":
        lines = ["digraph crystal {", "  rankdir=LR;"]
        for b in crystal.elements:
            lines.append(f'  "{b}";')
        for b, target, i in edges:
            lines.append(f'  "{b}" -> "{target}" [label="{i}"];')
        lines.append("}")
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK
    if fmt == "csv":
        _emit(
            _csv_text(["from", "to", "label"], [[b, t, i] for b, t, i in edges]),
            args.out,
        )
        return EXIT_OK
    if fmt == "json":
        obj = {
            "type": args.type,
            "rank": args.rank,
            "alphabet": list(crystal.elements),
            "weights": {
                b: crystal.weight(b).to_json_obj() for b in crystal.elements
            },
            "edges": [{"from": b, "to": t, "label": i} for b, t, i in edges],
        }
        _emit(_json_text(obj), args.out)
        return EXIT_OK
    raise ConfigError(f"graph output supports dot, json, or csv, not {fmt!r}")


def cmd_character(args) -> int:
    crystal = _crystal(args.type, args.rank)
    size = crystal.cartan.size
    requested = _parse_lambda_node(args.lam, size)
    node, perm = _resolve_scheduled_node(args.type, args.rank, requested)
    lam = crystal.cartan.fundamental_weight(node)
    try:
        schedule = demazure_schedule(crystal, lam, variant=args.variant)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if args.k < 0:
        raise ConfigError("step count must be nonnegative")
    characters = {}
    if args.method in ("paths", "both"):
        characters["paths"] = character_by_paths(
            schedule, args.k, threads=args.threads
        )
    if args.method in ("operators", "both"):
        characters["operators"] = character_by_operators(schedule, args.k)
    equal = None
    if args.method == "both":
        equal = characters["paths"] == characters["operators"]
    segments, remainder = divmod(args.k, schedule.d)
    full_segment = None
    if remainder == 0 and args.k > 0:
        full_segment = character_at_full_segment(schedule, segments)
    primary = characters.get("paths", characters.get("operators"))
    obj = {
        "type": args.type,
        "rank": args.rank,
        "lambda": {
            "requested": f"L{requested}",
            "computed": f"L{node}",
            "node_map": list(perm),
        },
        "k": args.k,
        "steps_per_segment": schedule.d,
        "word": [perm.index(schedule.table.flat_index(m)) for m in range(1, args.k + 1)],
        "characters": {
            key: _transport(chi, perm, crystal.cartan, requested).to_json_obj()
            for key, chi in sorted(characters.items())
        },
    }
    if equal is not None:
        obj["equal"] = equal
    if full_segment is not None:
        obj["full_segment"] = _transport(
            full_segment, perm, crystal.cartan, requested
        ).to_json_obj()
        obj["full_segment_equal"] = full_segment == primary
    fmt = _want(args, "json")
    if fmt == "json":
        _emit(_json_text(obj), args.out)
    elif fmt == "csv":
        _emit(
            _csv_text(
                ["weight", "delta", "coeff"],
                _character_rows(_transport(primary, perm, crystal.cartan, requested)),
            ),
            args.out,
        )
    else:
        raise ConfigError(f"character output supports json or csv, not {fmt!r}")
    if equal is False or (full_segment is not None and not obj["full_segment_equal"]):
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_onedsum(args) -> int:
    crystal = _crystal(args.type, args.rank)
    size = crystal.cartan.size
    b = _require_letter(crystal, args.b)
    if args.j < 0:
        raise ConfigError("window length must be nonnegative")
    params: dict = {"type": args.type, "rank": args.rank, "b": b, "j": args.j}
    method_name = args.method
    if args.kind == "g":
        if args.mu is None:
            raise ConfigError("kind g needs --mu")
        mu = _parse_weight(args.mu, size)
        params["mu"] = mu.to_json_obj()
        if args.method == "enumerate":
            poly = g_enumerate(crystal, b, mu, args.j)
        elif args.method == "recursive":
            poly = g_recursive(crystal, b, mu, args.j)
        else:
            raise ConfigError("kind g supports methods enumerate and recursive")
    else:
        if args.xi is None or args.eta is None:
            raise ConfigError(f"kind {args.kind} needs --xi and --eta")
        xi = _parse_weight(args.xi, size)
        eta = _parse_weight(args.eta, size)
        params["xi"] = xi.to_json_obj()
        params["eta"] = eta.to_json_obj()
        classical = args.kind == "xbar"
        if args.method == "enumerate":
            poly = x_enumerate(crystal, b, xi, eta, args.j, classical=classical)
        elif args.method == "recursive":
            poly = x_recursive(crystal, b, xi, eta, args.j, classical=classical)
        elif args.method == "weyl":
            method_name = "weyl_sum"
            poly = x_by_weyl_sum(
                crystal,
                b,
                xi,
                eta,
                args.j,
                classical=classical,
                max_weyl_length=args.max_weyl_length,
            )
        else:
            raise ConfigError(f"unknown method {args.method!r}")
    obj = {
        "kind": args.kind,
        "params": params,
        "method": method_name,
        "polynomial": _poly_obj(poly),
    }
    fmt = _want(args, "json")
    if fmt == "json":
        _emit(_json_text(obj), args.out)
    elif fmt == "csv":
        _emit(_csv_text(["exponent", "coefficient"], _poly_rows(poly)), args.out)
    else:
        raise ConfigError(f"onedsum output supports json or csv, not {fmt!r}")
    return EXIT_OK


def cmd_kostka(args) -> int:
    try:
        poly = kostka(_parse_ints(args.xi), args.l, args.j, args.n)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    obj = {
        "xi": list(_parse_ints(args.xi)),
        "l": args.l,
        "j": args.j,
        "n": args.n,
        "polynomial": _poly_obj(poly),
    }
    fmt = _want(args, "json")
    if fmt == "json":
        _emit(_json_text(obj), args.out)
    elif fmt == "csv":
        _emit(_csv_text(["exponent", "coefficient"], _poly_rows(poly)), args.out)
    else:
        raise ConfigError(f"kostka output supports json or csv, not {fmt!r}")
    return EXIT_OK


def cmd_stringfn(args) -> int:
    crystal = _crystal(args.type, args.rank)
    size = crystal.cartan.size
    node = _parse_lambda_node(args.lam, size)
    if not 0 <= node < size:
        raise ConfigError(
            f"node {node} out of range; this diagram has nodes 0..{size - 1}"
        )
    lam = crystal.cartan.fundamental_weight(node)
    if args.M < 0:
        raise ConfigError("truncation degree must be nonnegative")
    mu = _parse_weight(args.mu, size) if args.mu else None
    try:
        poly = stabilized_limit(
            "g", crystal, lam, args.M, mu=mu, max_j=args.max_window
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    coefficients = [int(poly.coeff(m)) for m in range(args.M + 1)]
    obj = {
        "type": args.type,
        "rank": args.rank,
        "lambda": f"L{node}",
        "M": args.M,
        "coefficients": coefficients,
        "polynomial": _poly_obj(poly),
    }
    if mu is not None:
        obj["mu"] = mu.to_json_obj()
    fmt = _want(args, "json")
    if fmt == "json":
        _emit(_json_text(obj), args.out)
    elif fmt == "csv":
        _emit(_csv_text(["exponent", "coefficient"], _poly_rows(poly)), args.out)
    else:
        raise ConfigError(f"stringfn output supports json or csv, not {fmt!r}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite == "formulas":
        if args.jmax is None:
            raise ConfigError("verify formulas needs --jmax")
        try:
            report = verify_type(args.type, args.jmax, args.rank, threads=args.threads)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        _emit(_json_text(report), args.out)
        return EXIT_OK if not report["mismatches"] else EXIT_MISMATCH
    if args.suite == "character":
        crystal = _crystal(args.type, args.rank)
        cases = []
        failed = False
        for node in scheduled_nodes(args.type, args.rank):
            lam = crystal.cartan.fundamental_weight(node)
            for variant in (1, 2):
                try:
                    schedule = demazure_schedule(crystal, lam, variant=variant)
                except ValueError:
                    continue
                k_max = args.kmax if args.kmax is not None else 2 * schedule.d
                mismatches = [
                    k
                    for k in range(k_max + 1)
                    if character_by_paths(schedule, k, threads=args.threads)
                    != character_by_operators(schedule, k)
                ]
                failed = failed or bool(mismatches)
                cases.append(
                    {
                        "lambda": f"L{node}",
                        "variant": variant,
                        "k_max": k_max,
                        "mismatches": mismatches,
                    }
                )
        obj = {
            "suite": "character",
            "type": args.type,
            "rank": args.rank,
            "cases": cases,
        }
        _emit(_json_text(obj), args.out)
        return EXIT_MISMATCH if failed else EXIT_OK
    if args.suite == "perfect":
        crystal = _crystal(args.type, args.rank)
        report = verify_perfect(crystal, args.level)
        obj = {
            "suite": "perfect",
            "type": args.type,
            "rank": args.rank,
            "level": args.level,
            "ok": report.ok,
            "failures": list(report.failures),
        }
        _emit(_json_text(obj), args.out)
        return EXIT_OK if report.ok else EXIT_MISMATCH
    raise ConfigError(
        f"unknown suite {args.suite!r}; available: formulas, character, perfect"
    )


def cmd_decomp_search(args) -> int:
    crystal = _crystal(args.type, args.rank)
    entries = []
    all_found = True
    for xi in dominant_classical_weights(crystal.cartan, args.level):
        report = check_disjoint_decomposition(crystal, xi, classical=args.classical)
        all_found = all_found and report.found
        entries.append(
            {
                "xi": list(xi.lambda_coords),
                "found": report.found,
                "non_admissible": list(report.non_admissible),
                "witness": [
                    {"root": root, "index": index, "string": list(string)}
                    for root, index, string in report.witness
                ],
            }
        )
    obj = {
        "type": args.type,
        "rank": args.rank,
        "level": args.level,
        "classical": args.classical,
        "results": entries,
    }
    fmt = _want(args, "json")
    if fmt == "json":
        _emit(_json_text(obj), args.out)
    elif fmt == "csv":
        rows = [
            [
                " ".join(str(c) for c in entry["xi"]),
                entry["found"],
                len(entry["witness"]),
            ]
            for entry in entries
        ]
        _emit(_csv_text(["xi", "found", "strings"], rows), args.out)
    else:
        raise ConfigError(f"decomp-search output supports json or csv, not {fmt!r}")
    return EXIT_OK if all_found else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# Argument wiring


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("--format", choices=["json", "dot", "csv"], help="output format")
    common.add_argument("--threads", type=int, default=1, help="worker thread bound")
    common.add_argument(
        "--max-weyl-length",
        type=int,
        default=12,
        dest="max_weyl_length",
        help="reflection-length guard for alternating sums",
    )

    parser = argparse.ArgumentParser(
        prog="demchar",
        description="Exact path-model characters and window sums for the six "
        "level-one letter crystals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", parents=[common], help="crystal arrow graph")
    g.add_argument("type")
    g.add_argument("rank", type=int)
    g.set_defaults(func=cmd_graph)

    c = sub.add_parser("character", parents=[common], help="step-k character")
    c.add_argument("type")
    c.add_argument("rank", type=int)
    c.add_argument("--lambda", dest="lam", required=True, help="highest weight token L0..Ln")
    c.add_argument("--k", type=int, required=True, help="number of lowering steps")
    c.add_argument("--method", choices=["paths", "operators", "both"], default="both")
    c.add_argument("--variant", type=int, choices=[1, 2], default=1)
    c.set_defaults(func=cmd_character)

    o = sub.add_parser("onedsum", parents=[common], help="window generating polynomial")
    o.add_argument("kind", choices=["g", "x", "xbar"])
    o.add_argument("--type", required=True)
    o.add_argument("--rank", type=int, required=True)
    o.add_argument("--b", required=True, help="boundary letter")
    o.add_argument("--j", type=int, required=True, help="window length")
    o.add_argument("--mu", help="weight token (kind g)")
    o.add_argument("--xi", help="weight token (kinds x, xbar)")
    o.add_argument("--eta", help="weight token (kinds x, xbar)")
    o.add_argument(
        "--method", choices=["enumerate", "recursive", "weyl"], default="recursive"
    )
    o.set_defaults(func=cmd_onedsum)

    k = sub.add_parser("kostka", parents=[common], help="tableau q-polynomial")
    k.add_argument("--xi", required=True, help="partition, comma-separated")
    k.add_argument("--l", type=int, required=True, help="row length of the content box")
    k.add_argument("--j", type=int, required=True, help="row count of the content box")
    k.add_argument("--n", type=int, required=True, help="rank bound")
    k.set_defaults(func=cmd_kostka)

    s = sub.add_parser("stringfn", parents=[common], help="stabilized string function")
    s.add_argument("--type", required=True)
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--lambda", dest="lam", required=True, help="highest weight token")
    s.add_argument("--M", type=int, required=True, help="truncation degree")
    s.add_argument("--mu", help="optional level-zero direction")
    s.add_argument(
        "--max-window",
        type=int,
        default=64,
        dest="max_window",
        help="window-length guard for stabilization",
    )
    s.set_defaults(func=cmd_stringfn)

    v = sub.add_parser("verify", parents=[common], help="verification suites")
    v.add_argument("suite", choices=["formulas", "character", "perfect"])
    v.add_argument("--type", required=True)
    v.add_argument("--rank", type=int, required=True)
    v.add_argument("--jmax", type=int, help="window bound (formulas)")
    v.add_argument("--kmax", type=int, help="step bound (character)")
    v.add_argument("--level", type=int, default=1, help="level (perfect)")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser(
        "decomp-search", parents=[common], help="non-admissible letter decomposition"
    )
    d.add_argument("--type", required=True)
    d.add_argument("--rank", type=int, required=True)
    d.add_argument("--level", type=int, default=1)
    d.add_argument("--classical", action="store_true", help="check classical nodes only")
    d.set_defaults(func=cmd_decomp_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except WeylSumGuardError as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except StabilizationGuardError as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
