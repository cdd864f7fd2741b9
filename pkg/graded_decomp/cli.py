#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""
Graded Decomposition Number Tool

Command-line surface for the library: canonical bases of the Fock space,
graded decomposition matrices by the Fock-space and the Hecke-algebra routes,
explicit Specht module and graded generator matrices, and the verification
suites. Output is GAP-style text or JSON.
"""

import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import typer
import yaml

from . import __version__
from .combinatorics import Partition, is_e_restricted, partitions_of, residue_label
from .errors import E2Unsupported, GradedDecompError, InvariantViolation, PreconditionViolation, UsageError
from .exactmath import CycloMatrix
from .fock import (
    CONVENTIONS,
    DecompositionMatrix,
    FockVector,
    canonical_basis_vector,
    check_commutators,
    eplus_column,
    eplus_matrix,
    graded_decomposition_matrix,
    minimal_padding,
    shift_consistency,
)
from .hecke import (
    Failure,
    SpechtRep,
    build_graded_specht,
    build_specht,
    check_klr_relations,
    decomposition_from_characters,
    graded_character,
    is_bar_symmetric_character,
    jm_matrices,
    klr_generators,
    permutation_module_idempotent_check,
    regular_representation,
    residue_idempotents,
    simple_character,
    verify_grading,
)

# Global configuration
CONFIG_FILE = "graded-decomp-config.yaml"

FORMATS = ("gap-text", "json")
ROUTES = ("fock", "hecke", "both")
SUITES = ("relations", "grading", "characters", "two-route", "fock-commutators")
KLR_SUITES = ("relations", "grading", "characters", "two-route")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3

DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
    "bounds": {"max_partition_size": 12, "max_hecke_rank": 6},
    "defaults": {
        "e": 4,
        "convention": "v-inverse",
        "format": "gap-text",
        "route": "fock",
        "threads": 1,
    },
    "fock": {"padding": "minimal"},
    "display": {"zero_symbol": "."},
    "verify": {"suites": list(SUITES), "commutator_max_size": 6},
}


class Colors:
    """ANSI color codes for terminal output"""

    GREEN = "\033[92m"
    RED = "\033[91m"
    YELLOW = "\033[93m"
    CYAN = "\033[96m"
    BOLD = "\033[1m"
    END = "\033[0m"


def load_config(path: Optional[Path] = None) -> Dict[str, Dict[str, Any]]:
    """Load configuration from YAML, merged section by section over the defaults"""
    config_path = path if path is not None else Path(__file__).parent / CONFIG_FILE
    merged_config = {section: dict(values) for section, values in DEFAULT_CONFIG.items()}

    if not config_path.exists():
        if path is not None:
            warn(f"Config file {config_path} does not exist, using defaults")
        return merged_config

    try:
        with open(config_path, "r", encoding="utf-8") as f:
            loaded_config = yaml.safe_load(f) or {}
        if not isinstance(loaded_config, dict):
            raise ValueError("top level must be a mapping")
        for section, values in loaded_config.items():
            if isinstance(values, dict) and isinstance(merged_config.get(section), dict):
                merged_config[section].update(values)
            else:
                merged_config[section] = values
        return merged_config
    except (yaml.YAMLError, IOError, ValueError) as e:
        warn(f"Could not load config file: {e}")
        return {section: dict(values) for section, values in DEFAULT_CONFIG.items()}


def warn(message: str) -> None:
    print(f"{Colors.YELLOW}⚠️  Warning: {message}{Colors.END}", file=sys.stderr)


def debug_line(enabled: bool, message: str) -> None:
    if enabled:
        print(f"{Colors.CYAN}{message}{Colors.END}", file=sys.stderr)


def padding_from(config: Dict[str, Dict[str, Any]]) -> Optional[int]:
    padding = config["fock"].get("padding", "minimal")
    if padding in (None, "minimal"):
        return None
    try:
        return int(padding)
    except (TypeError, ValueError):
        raise PreconditionViolation(f"fock.padding must be 'minimal' or an integer, got {padding!r}")


def choose(value: Any, config: Dict[str, Dict[str, Any]], key: str) -> Any:
    return config["defaults"][key] if value is None else value


def check_choice(value: str, allowed: Tuple[str, ...], what: str) -> str:
    if value not in allowed:
        raise PreconditionViolation(f"Unknown {what} '{value}', expected one of {', '.join(allowed)}")
    return value


def check_small_e(e: int, allow_small_e: bool) -> None:
    if e < 3:
        raise PreconditionViolation(f"e = {e} is not supported, e must be at least 3")
    if e == 3:
        if not allow_small_e:
            raise PreconditionViolation("e = 3 needs --allow-small-e")
        warn("e = 3 lies outside the range e >= 4 where Fock and Hecke columns are known to agree")


@dataclass
class OutputDocument:
    """A rendered command result, as GAP-style text or JSON"""

    format: str
    payload: Any
    text: str = ""

    def render(self) -> str:
        if self.format == "json":
            return json.dumps(self.payload, indent=2, sort_keys=False) + "\n"
        return self.text

    def emit(self, out: Optional[Path] = None) -> None:
        content = self.render()
        if out is not None:
            out.write_text(content, encoding="utf-8")
            print(f"{Colors.GREEN}✅ Wrote {out}{Colors.END}", file=sys.stderr)
        else:
            sys.stdout.write(content)


def render_matrix_text(
    matrix: DecompositionMatrix, convention: str, zero_symbol: str = "."
) -> str:
    """Lower triangle with the least dominant partition first, "?" for columns not computed"""
    shown = matrix.in_convention(convention)
    order = list(reversed(shown.rows))
    computed = set(shown.columns)
    width = max(len(p.label()) for p in order)
    lines = []
    for r, lam in enumerate(order):
        cells = []
        for mu in order[: r + 1]:
            if mu not in computed:
                cells.append("?")
                continue
            value = shown.entry(lam, mu)
            cells.append(zero_symbol if value.is_zero() else str(value))
        lines.append(f"{lam.label().ljust(width)}| {' '.join(cells)}")
    return "\n".join(lines) + "\n"


def render_classical_text(matrix: DecompositionMatrix, zero_symbol: str = ".") -> str:
    """Decomposition numbers at v = 1 in the GAP layout: entry (lambda, mu) is d_{lambda' mu'}"""
    conjugated = matrix.conjugated()
    order = list(conjugated.rows)
    computed = set(conjugated.columns)
    width = max(len(p.label()) for p in order)
    lines = []
    for r, lam in enumerate(order):
        cells = []
        for mu in order[: r + 1]:
            if mu not in computed:
                cells.append("?")
                continue
            value = int(conjugated.entry(lam, mu).evaluate(1))
            cells.append(zero_symbol if value == 0 else str(value))
        lines.append(f"{lam.label().ljust(width)}| {' '.join(cells)}")
    return "\n".join(lines) + "\n"


def render_canonical_text(vectors: Dict[Partition, FockVector]) -> str:
    return "".join(f"G({mu}) = {vector}\n" for mu, vector in vectors.items())


def render_cyclo_matrix(name: str, matrix: CycloMatrix) -> List[str]:
    cells = matrix.to_strings()
    width = max((len(c) for row in cells for c in row), default=1)
    lines = [f"{name}:"]
    for row in cells:
        lines.append("  [ " + " ".join(c.rjust(width) for c in row) + " ]")
    return lines


def specht_generators(rep: SpechtRep) -> List[Tuple[str, CycloMatrix]]:
    generators: List[Tuple[str, CycloMatrix]] = []
    generators += [(f"T_{k}", m) for k, m in enumerate(rep.T, 1)]
    generators += [(f"X_{a}", m) for a, m in enumerate(rep.X, 1)]
    generators += [(f"e({residue_label(i)})", m) for i, m in rep.idempotents.items()]
    generators += [(f"t_{a}", m) for a, m in enumerate(rep.t, 1)]
    generators += [(f"sigma_{k}", m) for k, m in enumerate(rep.sigma, 1)]
    return generators


def specht_payload(rep: SpechtRep) -> Dict[str, Any]:
    return {
        "shape": str(rep.shape),
        "e": rep.e,
        "basis": list(rep.labels),
        "degrees": rep.degrees,
        "blocks": [residue_label(b) for b in rep.blocks] if rep.blocks else None,
        "matrices": {name: matrix.to_strings() for name, matrix in specht_generators(rep)},
    }


def render_specht_text(rep: SpechtRep) -> str:
    lines = [f"S^({rep.shape}) e={rep.e}", f"basis   : {' '.join(rep.labels)}"]
    if rep.degrees is not None and rep.blocks is not None:
        lines.append(f"degrees : {' '.join(str(d) for d in rep.degrees)}")
        lines.append(f"blocks  : {' '.join(residue_label(b) for b in rep.blocks)}")
    for name, matrix in specht_generators(rep):
        lines += render_cyclo_matrix(name, matrix)
    return "\n".join(lines) + "\n"


def diff_lines(
    fock: DecompositionMatrix, hecke: DecompositionMatrix, convention: str
) -> List[Dict[str, str]]:
    left = fock.in_convention(convention)
    right = hecke.in_convention(convention)
    return [
        {"row": str(lam), "column": str(mu), "fock": a, "hecke": b}
        for lam, mu, a, b in left.diff(right)
    ]


def cmd_decomp(
    n: int,
    e: int,
    output_format: str,
    convention: str,
    route: str,
    config: Dict[str, Dict[str, Any]],
    allow_small_e: bool = False,
    classical: bool = False,
    threads: int = 1,
    debug: bool = False,
) -> Tuple[OutputDocument, bool]:
    """Graded decomposition matrix; returns the document and whether the routes agree"""
    check_choice(output_format, FORMATS, "format")
    check_choice(convention, CONVENTIONS, "convention")
    check_choice(route, ROUTES, "route")
    check_small_e(e, allow_small_e)
    if n < 1:
        raise PreconditionViolation("n must be at least 1")
    bound = config["bounds"]["max_partition_size"]
    zero = str(config["display"]["zero_symbol"])

    matrices: Dict[str, DecompositionMatrix] = {}
    if route in ("fock", "both"):
        debug_line(debug, f"🔍 Fock route n={n} e={e}")
        matrices["fock"] = graded_decomposition_matrix(
            n, e, d=padding_from(config), allow_small_e=allow_small_e, bound=bound, threads=threads
        )
    if route in ("hecke", "both"):
        debug_line(debug, f"🔍 Hecke route n={n} e={e}")
        matrices["hecke"] = decomposition_from_characters(
            n, e, bound=config["bounds"]["max_hecke_rank"], threads=threads
        )

    differences: List[Dict[str, str]] = []
    if route == "both":
        differences = diff_lines(matrices["fock"], matrices["hecke"], convention)

    payload: Dict[str, Any] = {
        "command": "decomp",
        "n": n,
        "e": e,
        "convention": convention,
        "matrices": {
            name: matrix.in_convention(convention).to_json() for name, matrix in matrices.items()
        },
    }
    if route == "both":
        payload["diff"] = differences

    sections = []
    for name, matrix in matrices.items():
        body = (
            render_classical_text(matrix, zero) if classical else render_matrix_text(matrix, convention, zero)
        )
        sections.append(body if len(matrices) == 1 else f"# {name}\n{body}")
    if route == "both":
        if differences:
            sections.append(
                "".join(f"diff ({d['row']}; {d['column']}): {d['fock']} != {d['hecke']}\n" for d in differences)
            )
        else:
            sections.append("# routes agree on all restricted columns\n")
    return OutputDocument(output_format, payload, "".join(sections)), not differences


def cmd_canonical(
    n: int,
    e: int,
    restricted_only: bool,
    output_format: str,
    config: Dict[str, Dict[str, Any]],
    allow_small_e: bool = False,
) -> OutputDocument:
    """b+_mu expansions, listed most dominant first"""
    check_choice(output_format, FORMATS, "format")
    check_small_e(e, allow_small_e)
    bound = config["bounds"]["max_partition_size"]
    vectors: Dict[Partition, FockVector] = {}
    for mu in partitions_of(n, bound):
        if is_e_restricted(mu, e):
            vectors[mu] = canonical_basis_vector(mu, e)
        elif not restricted_only:
            vectors[mu] = FockVector(eplus_column(mu, e, d=padding_from(config), bound=bound))
    payload = {
        "command": "canonical",
        "n": n,
        "e": e,
        "vectors": [
            {
                "partition": str(mu),
                "terms": [{"partition": str(lam), "value": c.to_pairs()} for lam, c in vector.items()],
            }
            for mu, vector in vectors.items()
        ],
    }
    return OutputDocument(output_format, payload, render_canonical_text(vectors))


def cmd_specht(shape: Partition, e: int, output_format: str, config: Dict[str, Dict[str, Any]]) -> OutputDocument:
    """Basis, degrees, blocks and generator matrices of S^shape"""
    check_choice(output_format, FORMATS, "format")
    bound = config["bounds"]["max_hecke_rank"]
    if e < 2:
        raise PreconditionViolation("e must be at least 2")
    if e == 2:
        warn("e = 2: printing T, X and e(i) only, the graded generators need e >= 3")
        rep = build_specht(shape, e, bound)
    else:
        rep = build_graded_specht(shape, e, bound)
    payload = {"command": "specht", **specht_payload(rep)}
    return OutputDocument(output_format, payload, render_specht_text(rep))


@dataclass
class SuiteResult:
    suite: str
    checked: int
    failures: List[Failure]


def _record(result: SuiteResult, module: str, check: Callable[[], List[str]]) -> None:
    try:
        messages = check()
    except InvariantViolation as exc:
        messages = [f"{type(exc).__name__}: {exc}"]
    result.checked += 1
    result.failures.extend(Failure(message, module) for message in messages)


def suite_relations(n_max: int, e: int, bound: int) -> SuiteResult:
    result = SuiteResult("relations", 0, [])
    for n in range(1, n_max + 1):
        for shape in partitions_of(n, bound=max(n, 1)):
            try:
                report = check_klr_relations(build_specht(shape, e, bound))
            except InvariantViolation as exc:
                result.checked += 1
                result.failures.append(Failure(f"{type(exc).__name__}: {exc}", f"S^({shape}) e={e}"))
                continue
            result.checked += report.checked
            result.failures.extend(report.failures)

    def rank_two() -> List[str]:
        rep = klr_generators(residue_idempotents(jm_matrices(regular_representation(2, e))))
        messages = permutation_module_idempotent_check(e)
        if set(rep.idempotents) != {(0, 1), (0, e - 1)}:
            messages.append(f"H_2 idempotents are {sorted(rep.idempotents)}")
        if not all(m.is_zero() for m in rep.t + rep.sigma):
            messages.append("t_1, t_2 or sigma_1 is nonzero on H_2")
        messages += [f.relation for f in check_klr_relations(rep).failures]
        return messages

    if n_max >= 2:
        _record(result, f"H_2 e={e}", rank_two)
    return result


def suite_grading(n_max: int, e: int, bound: int) -> SuiteResult:
    result = SuiteResult("grading", 0, [])
    for n in range(1, n_max + 1):
        for shape in partitions_of(n, bound=max(n, 1)):

            def check(shape: Partition = shape) -> List[str]:
                graded = build_graded_specht(shape, e, bound)
                alternative = verify_grading(build_specht(shape, e, bound), largest=True)
                if alternative.degrees != graded.degrees:
                    return [f"degrees {alternative.degrees} from the largest-descent words"]
                return []

            _record(result, f"S^({shape}) e={e}", check)
    return result


def suite_characters(n_max: int, e: int, bound: int) -> SuiteResult:
    result = SuiteResult("characters", 0, [])
    for n in range(1, n_max + 1):
        for shape in partitions_of(n, bound=max(n, 1)):

            def check(shape: Partition = shape) -> List[str]:
                rep = build_graded_specht(shape, e, bound)
                character = graded_character(rep)
                messages = []
                if sum(int(c.evaluate(1)) for c in character.values()) != rep.dim:
                    messages.append("character does not count the basis")
                if is_e_restricted(shape, e):
                    simple = simple_character(rep)
                    if not simple or not is_bar_symmetric_character(simple):
                        messages.append("simple character is zero or not bar-symmetric")
                return messages

            _record(result, f"S^({shape}) e={e}", check)
    return result


def suite_two_route(n_max: int, e: int, bound: int, partition_bound: int) -> SuiteResult:
    result = SuiteResult("two-route", 0, [])
    for n in range(1, n_max + 1):

        def check(n: int = n) -> List[str]:
            hecke = decomposition_from_characters(n, e, bound=bound)
            fock = graded_decomposition_matrix(n, e, allow_small_e=True, bound=partition_bound)
            messages = [f"({lam}; {mu}) fock {a} hecke {b}" for lam, mu, a, b in fock.diff(hecke)]
            shapes = partitions_of(n, partition_bound)
            for mu in shapes:
                if shift_consistency(mu, e) != 1:
                    messages.append(f"shift of {mu} is inconsistent")
            loose = [mu for mu in shapes if not is_e_restricted(mu, e)]
            if loose and n <= 4:
                d = max(minimal_padding(mu) for mu in loose) + 1
                if eplus_matrix(n, e, bound=partition_bound) != eplus_matrix(n, e, d=d, bound=partition_bound):
                    messages.append(f"padding d={d} changes the e+ matrix")
            return messages

        _record(result, f"n={n} e={e}", check)
    return result


def suite_fock_commutators(m_max: int, e: int) -> SuiteResult:
    result = SuiteResult("fock-commutators", 0, [])
    _record(result, f"Fock space e={e}", lambda: check_commutators(m_max, e))
    return result


def parse_suites(text: Optional[str], config: Dict[str, Dict[str, Any]]) -> List[str]:
    if text is None:
        return list(config["verify"]["suites"])
    if text.strip() == "all":
        return list(SUITES)
    suites = [s.strip() for s in text.split(",") if s.strip()]
    for suite in suites:
        check_choice(suite, SUITES, "suite")
    return suites


def cmd_verify(
    n_max: int,
    e_list: List[int],
    suites: List[str],
    output_format: str,
    config: Dict[str, Dict[str, Any]],
    threads: int = 1,
    debug: bool = False,
) -> Tuple[OutputDocument, List[SuiteResult]]:
    """Run the selected suites for every e; results keep the order suites x e"""
    check_choice(output_format, FORMATS, "format")
    hecke_bound = config["bounds"]["max_hecke_rank"]
    partition_bound = config["bounds"]["max_partition_size"]
    if n_max > hecke_bound and any(s in KLR_SUITES for s in suites):
        raise PreconditionViolation(f"--n-max {n_max} exceeds bounds.max_hecke_rank {hecke_bound}")
    for e in e_list:
        if e < 3 and any(s in KLR_SUITES for s in suites):
            raise E2Unsupported(f"e = {e}: the relations, grading, characters and two-route suites need e >= 3")

    commutator_size = min(int(config["verify"]["commutator_max_size"]), partition_bound)
    jobs: List[Callable[[], SuiteResult]] = []
    for suite in suites:
        for e in e_list:
            if suite == "relations":
                jobs.append(lambda e=e: suite_relations(n_max, e, hecke_bound))
            elif suite == "grading":
                jobs.append(lambda e=e: suite_grading(n_max, e, hecke_bound))
            elif suite == "characters":
                jobs.append(lambda e=e: suite_characters(n_max, e, hecke_bound))
            elif suite == "two-route":
                jobs.append(lambda e=e: suite_two_route(n_max, e, hecke_bound, partition_bound))
            else:
                jobs.append(lambda e=e: suite_fock_commutators(commutator_size, e))

    debug_line(debug, f"🔍 Running {len(jobs)} suite jobs on {threads} thread(s)")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: job(), jobs))
    else:
        results = [job() for job in jobs]

    lines = []
    records = []
    for result in results:
        status = "PASS" if not result.failures else "FAIL"
        marker = "✅" if not result.failures else "❌"
        lines.append(f"{marker} {status}: {result.suite} ({result.checked} checks)\n")
        for failure in result.failures:
            where = " ".join(part for part in (failure.module, failure.block) if part)
            lines.append(f"    - {where}: {failure.relation}\n")
            records.append({"suite": result.suite, **failure.to_json()})
    payload = {
        "command": "verify",
        "n_max": n_max,
        "e": e_list,
        "suites": suites,
        "passed": not records,
        "checks": sum(r.checked for r in results),
        "failures": records,
    }
    return OutputDocument(output_format, payload, "".join(lines)), results


def print_summary(results: List[SuiteResult]) -> None:
    """Print a verification summary to stderr"""
    checked = sum(r.checked for r in results)
    failed = sum(len(r.failures) for r in results)
    out = sys.stderr
    print(f"\n{Colors.BOLD}📊 VERIFICATION SUMMARY{Colors.END}", file=out)
    print(f"Suites run: {len(results)}", file=out)
    print(f"Checks: {checked}", file=out)
    print(f"{Colors.GREEN}Passed suites: {sum(1 for r in results if not r.failures)}{Colors.END}", file=out)
    if failed:
        print(f"{Colors.RED}Failures: {failed}{Colors.END}", file=out)


def run_guarded(action: Callable[[], int]) -> None:
    """Map library errors onto exit codes"""
    try:
        code = action()
    except (UsageError, ValueError) as exc:
        print(f"{Colors.RED}Error: {exc}{Colors.END}", file=sys.stderr)
        raise typer.Exit(EXIT_USAGE)
    except InvariantViolation as exc:
        print(f"{Colors.RED}Internal error ({type(exc).__name__}): {exc}{Colors.END}", file=sys.stderr)
        raise typer.Exit(EXIT_INVARIANT)
    except GradedDecompError as exc:
        print(f"{Colors.RED}Error: {exc}{Colors.END}", file=sys.stderr)
        raise typer.Exit(EXIT_INVARIANT)
    if code:
        raise typer.Exit(code)


app = typer.Typer(help="Graded decomposition numbers of q-Schur algebras", add_completion=False)

CONFIG_OPTION = typer.Option(None, "--config", help="Path to a YAML configuration file")
FORMAT_OPTION = typer.Option(None, "--format", "-f", help="Output format: gap-text or json")
E_OPTION = typer.Option(None, "--e", help="Quantum characteristic e")
OUT_OPTION = typer.Option(None, "--out", "-o", help="Write the output to this file")
DEBUG_OPTION = typer.Option(False, "--debug", "-d", help="Enable debug output")


def version_callback(value: bool) -> None:
    if value:
        print(f"graded-decomp {__version__}")
        raise typer.Exit()


@app.callback()
def root(
    version: bool = typer.Option(
        False, "--version", callback=version_callback, is_eager=True, help="Show the version"
    ),
) -> None:
    """Graded decomposition numbers of q-Schur algebras."""


@app.command()
def decomp(
    n: int = typer.Option(..., "--n", help="Size of the partitions"),
    e: Optional[int] = E_OPTION,
    output_format: Optional[str] = FORMAT_OPTION,
    convention: Optional[str] = typer.Option(
        None, "--convention", help="Print d(v) ('v') or d(v^-1) ('v-inverse')"
    ),
    route: Optional[str] = typer.Option(None, "--route", help="fock, hecke or both"),
    allow_small_e: bool = typer.Option(False, "--allow-small-e", help="Allow e = 3 with a warning"),
    classical: bool = typer.Option(
        False, "--classical", help="Print the v = 1 matrix in the GAP layout"
    ),
    threads: Optional[int] = typer.Option(None, "--threads", help="Worker threads"),
    out: Optional[Path] = OUT_OPTION,
    config_path: Optional[Path] = CONFIG_OPTION,
    debug: bool = DEBUG_OPTION,
) -> None:
    """Print the graded decomposition matrix for partitions of n."""
    config = load_config(config_path)

    def action() -> int:
        document, agree = cmd_decomp(
            n,
            choose(e, config, "e"),
            choose(output_format, config, "format"),
            choose(convention, config, "convention"),
            choose(route, config, "route"),
            config,
            allow_small_e=allow_small_e,
            classical=classical,
            threads=choose(threads, config, "threads"),
            debug=debug,
        )
        document.emit(out)
        if not agree:
            print(f"{Colors.RED}❌ The Fock and Hecke routes disagree{Colors.END}", file=sys.stderr)
            return EXIT_VERIFY_FAILED
        return EXIT_OK

    run_guarded(action)


@app.command()
def canonical(
    n: int = typer.Option(..., "--n", help="Size of the partitions"),
    e: Optional[int] = E_OPTION,
    restricted_only: bool = typer.Option(
        False, "--restricted-only", help="Only list e-restricted partitions"
    ),
    output_format: Optional[str] = FORMAT_OPTION,
    allow_small_e: bool = typer.Option(False, "--allow-small-e", help="Allow e = 3 with a warning"),
    out: Optional[Path] = OUT_OPTION,
    config_path: Optional[Path] = CONFIG_OPTION,
) -> None:
    """List the canonical basis vectors b+_mu of the Fock space."""
    config = load_config(config_path)

    def action() -> int:
        cmd_canonical(
            n,
            choose(e, config, "e"),
            restricted_only,
            choose(output_format, config, "format"),
            config,
            allow_small_e=allow_small_e,
        ).emit(out)
        return EXIT_OK

    run_guarded(action)


@app.command()
def specht(
    shape: str = typer.Option(..., "--shape", help="Partition, e.g. 3,1 or 2,1^2"),
    e: Optional[int] = E_OPTION,
    output_format: Optional[str] = FORMAT_OPTION,
    out: Optional[Path] = OUT_OPTION,
    config_path: Optional[Path] = CONFIG_OPTION,
) -> None:
    """Print the graded basis and generator matrices of a Specht module."""
    config = load_config(config_path)

    def action() -> int:
        partition = Partition.parse(shape)
        cmd_specht(partition, choose(e, config, "e"), choose(output_format, config, "format"), config).emit(out)
        return EXIT_OK

    run_guarded(action)


@app.command()
def verify(
    n_max: int = typer.Option(4, "--n-max", help="Largest n to check"),
    e: Optional[List[int]] = typer.Option(None, "--e", help="Values of e (repeatable)"),
    suites: Optional[str] = typer.Option(
        None, "--suites", help="Comma-separated suites or 'all'"
    ),
    output_format: Optional[str] = FORMAT_OPTION,
    threads: Optional[int] = typer.Option(None, "--threads", help="Worker threads"),
    out: Optional[Path] = OUT_OPTION,
    config_path: Optional[Path] = CONFIG_OPTION,
    debug: bool = DEBUG_OPTION,
) -> None:
    """Run the verification suites up to n-max."""
    config = load_config(config_path)

    def action() -> int:
        e_list = list(e) if e else [int(config["defaults"]["e"])]
        document, results = cmd_verify(
            n_max,
            e_list,
            parse_suites(suites, config),
            choose(output_format, config, "format"),
            config,
            threads=choose(threads, config, "threads"),
            debug=debug,
        )
        document.emit(out)
        print_summary(results)
        if any(r.failures for r in results):
            return EXIT_VERIFY_FAILED
        return EXIT_OK

    run_guarded(action)


def main() -> None:
    """Main entry point for CLI usage"""
    app()


if __name__ == "__main__":
    main()
