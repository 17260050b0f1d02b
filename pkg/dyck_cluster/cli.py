"""
Command-line interface for dyck-cluster.
"""

import argparse
import json
import logging
import os
import sys
from datetime import datetime
from typing import Optional

from . import __version__
from .clusteralg import (
    SEED_CAP_ENV, cluster_var_from_dyck, dyck_cluster_variables,
    enumerate_cluster_variables, verify_bijection,
)
from .database import DEFAULT_DB_PATH, Database
from .dyckcore import (
    MAX_N_ENV, PeakPath, configured_max_n, enumerate_S, enumerate_dyck,
    parse_path, shift_graph, to_peak_path,
)
from .errors import (
    EXIT_INTERNAL, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, DyckClusterError,
    InvalidInputError, SizeLimitError, exit_code_for,
)
from .laurent import canonical_string, sort_key
from .models import RunStatus
from .nakayama import (
    KupischSeries, ar_quiver_nakayama, dyck_from_kupisch, kupisch_from_relations,
    nv_objects, nv_spec_from_kupisch, parse_kupisch, parse_relations,
)
from .quiverrep import quiver_from_subchain
from .shiftcat import AdmissibleSubchain, ar_quiver, es_successors, hom_nonzero, parse_chain
from .snakegraph import (
    edge_letters, enumerate_matchings, matching_count, matching_weight,
    restricted_words, snake_from_subchain, support_snake, word_from_matching,
    words_X_C,
)
from .verifier import DEFAULT_WORKERS, BijectionVerifier

logger = logging.getLogger(__name__)


def setup_logging(verbose: bool = False):
    """Configure logging."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )


def format_duration(delta) -> str:
    """Format timedelta to human-readable string."""
    total_seconds = int(delta.total_seconds())
    hours, remainder = divmod(total_seconds, 3600)
    minutes, seconds = divmod(remainder, 60)

    if hours > 0:
        return f"{hours}h {minutes}m {seconds}s"
    elif minutes > 0:
        return f"{minutes}m {seconds}s"
    else:
        return f"{seconds}s"


def progress_bar(current: int, total: int, width: int = 40) -> str:
    """Generate a text progress bar."""
    if total == 0:
        return "[" + "=" * width + "]"

    filled = int(width * current / total)
    bar = "=" * filled + "-" * (width - filled)
    percent = 100 * current / total
    return f"[{bar}] {percent:.1f}% ({current}/{total})"


def emit_json(data) -> None:
    print(json.dumps(data, indent=2))


def parse_object(text: str, n: int) -> PeakPath:
    """A path of S given as its step word or as its support "[l,r]"."""
    text = text.strip()
    if text.startswith("["):
        bounds = text.strip("[]").split(",")
        if len(bounds) != 2 or not all(b.strip().isdigit() for b in bounds):
            raise InvalidInputError(f"Unknown path format {text!r}")
        y = PeakPath(n, int(bounds[0]), int(bounds[1]))
    else:
        y = to_peak_path(parse_path(text))
    if y.n != n:
        raise InvalidInputError(f"{text} has semilength {y.n}, expected {n}")
    return y


def load_chain(n: int, chain: str) -> AdmissibleSubchain:
    limit = configured_max_n()
    if n > limit:
        raise SizeLimitError(f"n={n} exceeds the size cap {limit}")
    return parse_chain(chain, n)


def word_text(word) -> str:
    return str(word) or "-"


class CLI:
    """Command-line interface handler."""

    def __init__(self, as_json: bool = False):
        self.as_json = as_json

    def enumerate(self, n: int, peaks: Optional[int] = None) -> int:
        """List Dyck paths of semilength n."""
        paths = enumerate_dyck(n, peaks=peaks)
        if self.as_json:
            emit_json([p.steps for p in paths])
        else:
            for p in paths:
                print(p.steps)
        return EXIT_OK

    def shifts(self, n: int, chain: Optional[str] = None) -> int:
        """Unitary shifts on all of D_2n, or the elementary shifts on S for a subchain."""
        if chain is None:
            graph = shift_graph(n)
            edges = sorted(graph.edges(data="index"))
            if self.as_json:
                emit_json([{"from": a, "to": b, "index": i} for a, b, i in edges])
            else:
                for a, b, i in edges:
                    print(f"{a} -f{i}-> {b}")
            return EXIT_OK

        c = load_chain(n, chain)
        arrows = [s for y in enumerate_S(n) for s in es_successors(y, c)]
        if self.as_json:
            emit_json([
                {
                    "from": s.source.label(),
                    "to": s.target.label(),
                    "from_path": s.source.steps,
                    "to_path": s.target.steps,
                    "kind": s.kind.value,
                    "composition": list(s.composition),
                }
                for s in arrows
            ])
        else:
            for s in arrows:
                print(f"{s}  ({s.kind.value})")
        return EXIT_OK

    def hom(self, n: int, chain: str, source: str, target: str) -> int:
        """dim Hom between two paths of S, always 0 or 1."""
        c = load_chain(n, chain)
        y1, y2 = parse_object(source, n), parse_object(target, n)
        dim = int(hom_nonzero(y1, y2, c))
        if self.as_json:
            emit_json({"from": y1.label(), "to": y2.label(), "dim": dim})
        else:
            print(dim)
        return EXIT_OK

    def ar_quiver(self, n: int, chain: str, fmt: str = "text") -> int:
        quiver = ar_quiver(load_chain(n, chain))
        if fmt == "dot":
            print(quiver.to_dot(), end="")
        elif self.as_json or fmt == "json":
            emit_json(quiver.to_json())
        else:
            for y in quiver.vertices:
                tau = quiver.tau(y)
                targets = ", ".join(t.label() for t in quiver.successors(y)) or "-"
                print(f"{y.label():<8} {y.steps}  tau={tau.label() if tau else 'P'}  -> {targets}")
        return EXIT_OK

    def nakayama(
        self,
        kupisch: Optional[str] = None,
        relations: Optional[str] = None,
        m: Optional[int] = None,
        fmt: str = "text",
    ) -> int:
        """Kupisch series, Dyck path and AR quiver of a linear Nakayama algebra."""
        series = self._series(kupisch, relations, m)
        path = dyck_from_kupisch(series)

        if fmt == "dyck":
            print(path.steps)
            return EXIT_OK

        quiver = ar_quiver_nakayama(series)
        if fmt == "dot":
            print(quiver.to_dot(), end="")
            return EXIT_OK

        objects = nv_objects(nv_spec_from_kupisch(series))
        if self.as_json or fmt == "json":
            emit_json({
                "kupisch": list(series.c),
                "dyck": path.steps,
                "objects": [y.label() for y in objects],
                "ar_quiver": quiver.to_json(),
            })
            return EXIT_OK

        print(f"Kupisch series: [{series}]")
        print(f"Dyck path: {path.steps}")
        print(f"Indecomposables ({len(objects)}): {' '.join(y.label() for y in objects)}")
        print(f"AR quiver: {len(quiver.vertices)} vertices, {len(quiver.arrows)} arrows")
        return EXIT_OK

    @staticmethod
    def _series(kupisch: Optional[str], relations: Optional[str], m: Optional[int]) -> KupischSeries:
        if kupisch:
            return parse_kupisch(kupisch)
        if relations is None:
            raise InvalidInputError("Give --kupisch or --relations")
        if m is None:
            raise InvalidInputError("--relations needs --m")
        return kupisch_from_relations(m, parse_relations(relations))

    def snake(self, n: int, chain: str) -> int:
        c = load_chain(n, chain)
        g = snake_from_subchain(c)
        labels = sorted(edge_letters(g).items(), key=lambda item: (item[1], item[0]))
        if self.as_json:
            emit_json({
                **g.to_json(),
                "tiles": g.d,
                "matchings": matching_count(g),
                "labels": [
                    {"edge": [list(a), list(b)], "letter": str(letter)}
                    for (a, b), letter in labels
                ],
            })
            return EXIT_OK

        print(f"Steps: {''.join(s.value for s in g.steps) or '-'}")
        print(f"Tiles: {g.d}")
        print(f"Perfect matchings: {matching_count(g)}")
        for (a, b), letter in labels:
            print(f"  {letter}: {a} - {b}")
        return EXIT_OK

    def matchings(self, n: int, chain: str, path: Optional[str] = None) -> int:
        """Perfect matchings of the snake, or of its piece over a path's support."""
        c = load_chain(n, chain)
        g = support_snake(parse_object(path, n), c) if path else snake_from_subchain(c)
        found = enumerate_matchings(g)
        rows = [
            (p, word_from_matching(p, g, c), canonical_string(matching_weight(p, g, n - 1)))
            for p in found
        ]
        if self.as_json:
            emit_json([
                {"edges": p.to_json(), "word": str(word), "weight": weight}
                for p, word, weight in rows
            ])
        else:
            for k, (_, word, weight) in enumerate(rows, start=1):
                print(f"{k:>3}  {word_text(word):<30} {weight}")
        return EXIT_OK

    def words(self, n: int, chain: str, path: Optional[str] = None) -> int:
        c = load_chain(n, chain)
        found = restricted_words(parse_object(path, n), c) if path else words_X_C(c)
        if self.as_json:
            emit_json([str(w) for w in found])
        else:
            for w in found:
                print(word_text(w))
        return EXIT_OK

    def cluster_vars(
        self,
        n: int,
        chain: str,
        path: Optional[str] = None,
        method: str = "dyck",
    ) -> int:
        """Cluster variables from Dyck paths, from mutation, or both compared."""
        c = load_chain(n, chain)

        if path:
            if method == "mutation":
                raise InvalidInputError("--path needs --method dyck or both")
            y = parse_object(path, n)
            value = canonical_string(cluster_var_from_dyck(y, c))
            found = True
            if method == "both":
                reached = enumerate_cluster_variables(quiver_from_subchain(c))
                found = value in {canonical_string(x) for x in reached}
            if self.as_json:
                emit_json({"path": y.steps, "support": y.label(), "value": value, "reached": found})
            else:
                print(value)
                if not found:
                    print("❌ Not reached by mutation", file=sys.stderr)
            return EXIT_OK if found else EXIT_MISMATCH

        if method == "dyck":
            values = dyck_cluster_variables(c)
            if self.as_json:
                emit_json([
                    {"path": y.steps, "support": y.label(), "value": canonical_string(x)}
                    for y, x in values.items()
                ])
            else:
                for y, x in values.items():
                    print(f"{y.label():<8} {y.steps}  {canonical_string(x)}")
            return EXIT_OK

        if method == "mutation":
            values = sorted(enumerate_cluster_variables(quiver_from_subchain(c)), key=sort_key)
            if self.as_json:
                emit_json([canonical_string(x) for x in values])
            else:
                for x in values:
                    print(canonical_string(x))
            return EXIT_OK

        report = verify_bijection(c)
        if self.as_json:
            emit_json(report.to_json())
        else:
            mark = "✅" if report.equal else "❌"
            print(f"{mark} {report.chain} (n={report.n}): "
                  f"{report.dyck_count} from Dyck paths, {report.mutation_count} from mutation")
            for x in report.missing:
                print(f"  missing: {x}")
            for x in report.extra:
                print(f"  extra:   {x}")
        return EXIT_OK if report.equal else EXIT_MISMATCH

    def verify(
        self,
        nmax: int,
        nmin: int = 3,
        db_path: Optional[str] = None,
        resume: bool = True,
        workers: Optional[int] = None,
    ) -> int:
        """Cross-check both engines on every subchain up to nmax."""
        num_workers = workers or DEFAULT_WORKERS
        db = Database(db_path) if db_path else None
        out = sys.stderr if self.as_json else sys.stdout

        print(f"\n🔗 Dyck Cluster v{__version__}", file=out)
        print("=" * 50, file=out)
        print(f"Range: n = {nmin}..{nmax}", file=out)
        print(f"Ledger: {db_path or 'in memory'}", file=out)
        print(f"Workers: {num_workers} (processes)", file=out)
        print("=" * 50, file=out)

        def progress_callback(done: int, total: int, current: str):
            print(f"\r{progress_bar(done, total)} {current:<24}", end="", file=sys.stderr, flush=True)

        verifier = BijectionVerifier(
            db,
            progress_callback=progress_callback,
            num_workers=num_workers,
        )

        start = datetime.now()
        try:
            summary = verifier.verify_all(nmax, nmin=nmin, resume=resume)
            print(file=sys.stderr)  # New line after progress bar
        except KeyboardInterrupt:
            print("\n\n⚠️  Verification interrupted.", file=sys.stderr)
            if db:
                print("Run the same command to resume.", file=sys.stderr)
            return EXIT_MISMATCH

        if self.as_json:
            emit_json(summary.to_json())
            return EXIT_OK if summary.ok else EXIT_MISMATCH

        by_n: dict[int, list] = {}
        for result in summary.results:
            by_n.setdefault(result.n, []).append(result)

        print("\n✅ Verification Complete!" if summary.ok else "\n❌ Verification Found Mismatches")
        print("-" * 40)
        for n, results in sorted(by_n.items()):
            agreed = sum(1 for r in results if r.passed)
            print(f"n={n}: {agreed}/{len(results)} subchains agree, "
                  f"{results[0].dyck_count} variables each")
        if summary.skipped:
            print(f"Skipped (already passed): {summary.skipped}")
        print(f"Duration: {format_duration(datetime.now() - start)}")
        print("-" * 40)

        for r in summary.failures:
            print(f"  ❌ n={r.n} {r.chain}: {r.error_message or f'{len(r.missing)} missing, {len(r.extra)} extra'}")
        return EXIT_OK if summary.ok else EXIT_MISMATCH

    def history(self, db_path: str = DEFAULT_DB_PATH, limit: int = 10) -> int:
        """List recorded verification runs."""
        db = Database(db_path)
        runs = db.list_runs(limit=limit)

        if self.as_json:
            emit_json([
                {
                    "id": run.id,
                    "nmin": run.nmin,
                    "nmax": run.nmax,
                    "status": run.status.value,
                    "chains_total": run.chains_total,
                    "chains_done": run.chains_done,
                    "mismatches": run.mismatches,
                    "started_at": run.started_at.isoformat() if run.started_at else None,
                    "completed_at": run.completed_at.isoformat() if run.completed_at else None,
                }
                for run in runs
            ])
            return EXIT_OK

        if not runs:
            print("No verification runs found.")
            return EXIT_OK

        print(f"\n{'ID':<6} {'Status':<14} {'Range':<10} {'Chains':<12} {'Mismatches':<11} {'Started'}")
        print("-" * 70)
        for run in runs:
            emoji = {
                RunStatus.RUNNING: "🔄",
                RunStatus.COMPLETED: "✅",
                RunStatus.MISMATCH: "❌",
                RunStatus.INTERRUPTED: "⏸️",
                RunStatus.FAILED: "💥",
            }.get(run.status, "❓")
            started = run.started_at.strftime('%Y-%m-%d %H:%M') if run.started_at else "-"
            print(f"{run.id:<6} {emoji} {run.status.value:<11} "
                  f"{f'{run.nmin}..{run.nmax}':<10} "
                  f"{f'{run.chains_done}/{run.chains_total}':<12} {run.mismatches:<11} {started}")
        return EXIT_OK


def add_chain_args(parser: argparse.ArgumentParser, path: bool = False):
    parser.add_argument('--n', type=int, required=True, help='Path semilength (quiver A_{n-1})')
    parser.add_argument(
        '--chain', required=True,
        help='Admissible subchain, e.g. "j1,i2,j4" (i = sink, j = source)'
    )
    if path:
        parser.add_argument(
            '--path',
            help='Restrict to one path of S, as a step word or "[l,r]"'
        )
    parser.add_argument('--json', action='store_true', help='Print JSON')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dyck-cluster",
        description="Dyck Cluster Tool - Dyck-path model of type-A cluster algebras",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Dyck paths of semilength 4 with 3 peaks
  dyck-cluster enumerate --n 4 --peaks 3

  # Cluster variable of one Dyck path
  dyck-cluster cluster-vars --n 5 --chain "j1,i2,j4" --path UDUUDUDDUD

  # AR quiver as Graphviz
  dyck-cluster ar-quiver --n 6 --chain "i1,j3,i5" --dot

  # Nakayama algebra from zero relations
  dyck-cluster nakayama --relations "3-4,1-3" --m 5

  # Cross-check both engines, recording verdicts
  dyck-cluster verify --nmax 6 --db dyck_cluster.db
"""
    )

    parser.add_argument(
        '--version', action='version', version=f'dyck-cluster {__version__}'
    )
    parser.add_argument(
        '-v', '--verbose', action='store_true',
        help='Enable verbose logging'
    )
    parser.add_argument(
        '--max-n', type=int,
        help=f'Size cap for enumerations (default: ${MAX_N_ENV} or 14)'
    )
    parser.add_argument(
        '--seed-cap', type=int,
        help=f'Seed exploration cap for mutation (default: ${SEED_CAP_ENV} or 1000000)'
    )

    subparsers = parser.add_subparsers(dest='command', help='Commands')

    enum_parser = subparsers.add_parser('enumerate', help='List Dyck paths')
    enum_parser.add_argument('--n', type=int, required=True, help='Semilength')
    enum_parser.add_argument('--peaks', type=int, help='Keep paths with exactly this many peaks')
    enum_parser.add_argument('--json', action='store_true', help='Print JSON')

    shifts_parser = subparsers.add_parser(
        'shifts', help='Unitary shifts on D_2n, or elementary shifts on S with --chain'
    )
    shifts_parser.add_argument('--n', type=int, required=True, help='Semilength')
    shifts_parser.add_argument('--chain', help='Admissible subchain')
    shifts_parser.add_argument('--json', action='store_true', help='Print JSON')

    hom_parser = subparsers.add_parser('hom', help='dim Hom between two paths of S')
    add_chain_args(hom_parser)
    hom_parser.add_argument('--from', dest='source', required=True, help='Source path')
    hom_parser.add_argument('--to', dest='target', required=True, help='Target path')

    ar_parser = subparsers.add_parser('ar-quiver', help='Auslander-Reiten quiver on S')
    ar_parser.add_argument('--n', type=int, required=True, help='Path semilength')
    ar_parser.add_argument('--chain', required=True, help='Admissible subchain')
    ar_format = ar_parser.add_mutually_exclusive_group()
    ar_format.add_argument('--dot', action='store_const', dest='fmt', const='dot', help='Print Graphviz DOT')
    ar_format.add_argument('--json', action='store_const', dest='fmt', const='json', help='Print JSON')

    nak_parser = subparsers.add_parser('nakayama', help='Linear Nakayama algebra from a Kupisch series')
    nak_source = nak_parser.add_mutually_exclusive_group(required=True)
    nak_source.add_argument('--kupisch', help='Kupisch series, e.g. "3,3,2,2,1"')
    nak_source.add_argument('--relations', help='Zero relations x_a..x_b as "a-b", e.g. "3-4,1-3"')
    nak_parser.add_argument('--m', type=int, help='Number of vertices (with --relations)')
    nak_format = nak_parser.add_mutually_exclusive_group()
    nak_format.add_argument('--dot', action='store_const', dest='fmt', const='dot', help='Print Graphviz DOT')
    nak_format.add_argument('--json', action='store_const', dest='fmt', const='json', help='Print JSON')
    nak_format.add_argument('--dyck', action='store_const', dest='fmt', const='dyck', help='Print the Dyck path')

    snake_parser = subparsers.add_parser('snake', help='Snake graph of a subchain')
    add_chain_args(snake_parser)

    match_parser = subparsers.add_parser('matchings', help='Perfect matchings of the snake graph')
    add_chain_args(match_parser, path=True)

    words_parser = subparsers.add_parser('words', help='Words of X_C, or of one path with --path')
    add_chain_args(words_parser, path=True)

    cv_parser = subparsers.add_parser('cluster-vars', help='Cluster variables')
    add_chain_args(cv_parser, path=True)
    cv_parser.add_argument(
        '--method', choices=['dyck', 'mutation', 'both'], default='dyck',
        help='Dyck-path formula, seed mutation, or both compared (default: dyck)'
    )

    verify_parser = subparsers.add_parser('verify', help='Cross-check both engines on every subchain')
    verify_parser.add_argument('--nmax', type=int, required=True, help='Largest n to check')
    verify_parser.add_argument('--nmin', type=int, default=3, help='Smallest n to check (default: 3)')
    verify_parser.add_argument('--db', help='Record verdicts in this SQLite file')
    verify_parser.add_argument(
        '--no-resume', action='store_true',
        help='Recheck subchains that already passed in the ledger'
    )
    verify_parser.add_argument(
        '--workers', '-w', type=int,
        help='Number of worker processes (default: CPU count)'
    )
    verify_parser.add_argument('--json', action='store_true', help='Print JSON')

    history_parser = subparsers.add_parser('history', help='List recorded verification runs')
    history_parser.add_argument(
        '--db', default=DEFAULT_DB_PATH,
        help=f'Path to SQLite ledger (default: {DEFAULT_DB_PATH})'
    )
    history_parser.add_argument('--limit', type=int, default=10, help='Number of runs to show')
    history_parser.add_argument('--json', action='store_true', help='Print JSON')

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    setup_logging(args.verbose)

    # Worker processes inherit the caps through the environment
    if args.max_n is not None:
        os.environ[MAX_N_ENV] = str(args.max_n)
    if args.seed_cap is not None:
        os.environ[SEED_CAP_ENV] = str(args.seed_cap)

    fmt = getattr(args, 'fmt', None)
    as_json = getattr(args, 'json', False) is True or fmt == 'json'
    cli = CLI(as_json=as_json)

    try:
        if args.command == 'enumerate':
            return cli.enumerate(args.n, peaks=args.peaks)
        elif args.command == 'shifts':
            return cli.shifts(args.n, chain=args.chain)
        elif args.command == 'hom':
            return cli.hom(args.n, args.chain, args.source, args.target)
        elif args.command == 'ar-quiver':
            return cli.ar_quiver(args.n, args.chain, fmt=fmt or 'text')
        elif args.command == 'nakayama':
            return cli.nakayama(
                kupisch=args.kupisch, relations=args.relations, m=args.m, fmt=fmt or 'text'
            )
        elif args.command == 'snake':
            return cli.snake(args.n, args.chain)
        elif args.command == 'matchings':
            return cli.matchings(args.n, args.chain, path=args.path)
        elif args.command == 'words':
            return cli.words(args.n, args.chain, path=args.path)
        elif args.command == 'cluster-vars':
            return cli.cluster_vars(args.n, args.chain, path=args.path, method=args.method)
        elif args.command == 'verify':
            return cli.verify(
                args.nmax,
                nmin=args.nmin,
                db_path=args.db,
                resume=not args.no_resume,
                workers=args.workers,
            )
        elif args.command == 'history':
            return cli.history(db_path=args.db, limit=args.limit)
    except DyckClusterError as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        logger.debug("Command failed", exc_info=True)
        return exit_code_for(e)
    except Exception as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        logging.exception("Command failed")
        return EXIT_INTERNAL

    parser.print_help()
    return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
