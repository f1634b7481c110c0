import json
import logging
import sys
from contextlib import contextmanager

import typer
from dotenv import load_dotenv
from pydantic import ValidationError

from lib.utils import read, write
from netlap.core import GENERATOR_ALIASES, SignedGraph, generate as build_graph, net_laplacian, to_dot
from netlap.errors import CapExceededError, InapplicableError, InputError, NetlapError, TheoremViolation
from netlap.exactalg import char_poly, inertia, rank_exact
from netlap.forests import forest_char_poly
from netlap.search import (
    SweepConfig,
    find_shared_cycle_examples,
    load_config,
    small_suite,
    sweep as run_sweep,
    write_findings,
)
from netlap.settings import get_settings
from netlap.structure import (
    block_decomposition,
    cactus_cycles,
    component_graphs,
    connected_components,
    cut_edges,
    cut_vertices,
    cyclomatic_number,
    is_connected,
    shared_edge_block,
)
from netlap.theorems import (
    CheckResult,
    VerificationReport,
    classify_max_nullity,
    nullity_bounds,
    predict_cactus_nullity,
    verify_all,
)

load_dotenv()

app = typer.Typer(help="exact nullity and spectral checks for net Laplacians of signed graphs.")

EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_CAP = 3


@contextmanager
def exit_codes():
    """Map library errors onto the exit-code contract; messages go to stderr."""
    try:
        yield
    except TheoremViolation as e:
        typer.echo(f"check failed: {e.check}: {e.witness}", err=True)
        if e.graph_json:
            typer.echo(f"witness graph: {e.graph_json}", err=True)
        raise typer.Exit(EXIT_FAILURE)
    except CapExceededError as e:
        typer.echo(f"cap exceeded: {e}", err=True)
        raise typer.Exit(EXIT_CAP)
    except (InputError, ValidationError, json.JSONDecodeError, OSError) as e:
        typer.echo(f"invalid input: {e}", err=True)
        raise typer.Exit(EXIT_INPUT)
    except NetlapError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(EXIT_FAILURE)


def emit(payload) -> None:
    typer.echo(json.dumps(payload, separators=(",", ":")))


def load_graph(path: str) -> tuple[SignedGraph, dict]:
    data = json.loads(read(path))
    if not isinstance(data, dict):
        raise InputError("graph JSON must be an object with n and edges")
    return SignedGraph.model_validate(data), data


def parse_signs(text: str) -> list[int]:
    signs = []
    for ch in text:
        if ch == "+":
            signs.append(1)
        elif ch == "-":
            signs.append(-1)
        else:
            raise InputError(f"sign strings use + and -, got {ch!r} in {text!r}")
    return signs


@app.callback()
def options(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="log progress to stderr"),
):
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


@app.command()
def nullity(
    graph: str = typer.Argument("-", help="graph JSON file, - for stdin"),
):
    """
    Print the exact nullity, rank and inertia of the net Laplacian.
    """
    with exit_codes():
        g, _ = load_graph(graph)
        L = net_laplacian(g)
        r = rank_exact(L)
        emit({"nullity": g.n - r, "rank": r, "inertia": list(inertia(L))})


@app.command()
def charpoly(
    graph: str = typer.Argument("-", help="graph JSON file, - for stdin"),
    oracle: bool = typer.Option(False, help="also sum signed spanning forests"),
    cap: int = typer.Option(None, help="largest order the forest oracle accepts"),
):
    """
    Print the coefficients c_0 .. c_n of det(xI - L).
    """
    with exit_codes():
        g, _ = load_graph(graph)
        coeffs = list(char_poly(net_laplacian(g)).coeffs)
        payload: dict = {"coeffs": coeffs}
        if oracle:
            forests = forest_char_poly(g, cap if cap is not None else get_settings().forest_cap)
            payload["oracle"] = forests
            payload["agree"] = forests == coeffs
        emit(payload)


def analysis(g: SignedGraph) -> dict:
    L = net_laplacian(g)
    r = rank_exact(L)
    eta = g.n - r
    report: dict = {
        "n": g.n,
        "m": g.m,
        "nullity": eta,
        "rank": r,
        "inertia": list(inertia(L)),
        "components": connected_components(g),
        "connected": is_connected(g),
    }
    if not report["connected"]:
        parts = []
        for part, labels in component_graphs(g):
            inverse = sorted(labels, key=labels.get)
            entry = {
                "vertices": inverse,
                "nullity": part.n - rank_exact(net_laplacian(part)),
                "beta": cyclomatic_number(part),
            }
            parts.append(entry)
        total = sum(p["nullity"] for p in parts)
        report["component_analysis"] = parts
        report["additivity"] = {"sum": total, "nullity": eta, "holds": total == eta}
        return report

    report["beta"] = cyclomatic_number(g)
    report["blocks"] = [b.model_dump() for b in block_decomposition(g).blocks]
    report["cut_vertices"] = cut_vertices(g)
    report["cut_edges"] = cut_edges(g)
    block = shared_edge_block(g)
    report["cactus"] = block is None
    if block is not None:
        report["shared_edge_block"] = block.model_dump()
    else:
        report["cycles"] = [
            {**c.model_dump(), "balanced_count": c.balanced_count} for c in cactus_cycles(g)
        ]
        prediction = predict_cactus_nullity(g)
        report["prediction"] = {
            **prediction.model_dump(mode="json"),
            "matches": prediction.predicted_nullity == eta,
        }
    try:
        bounds = nullity_bounds(g)
        report["bounds"] = {**bounds.model_dump(), "holds": bounds.low <= eta <= bounds.high}
        report["max_nullity"] = classify_max_nullity(g).model_dump()
    except InapplicableError as e:
        report["bounds"] = {"inapplicable": e.reason}
    return report


@app.command()
def analyze(
    graph: str = typer.Argument("-", help="graph JSON file, - for stdin"),
):
    """
    Structural and spectral report: components, blocks, cycles, cactus prediction and bounds.
    """
    with exit_codes():
        g, _ = load_graph(graph)
        emit(analysis(g))


EXPECTED_VALUES = "expected_values"


def expectation_check(g: SignedGraph, expected: dict) -> CheckResult:
    # graph files may pin known values under "expected"
    L = net_laplacian(g)
    r = rank_exact(L)
    actual = {"nullity": g.n - r, "rank": r, "inertia": list(inertia(L))}
    unknown = [k for k in expected if k not in actual]
    if unknown:
        raise InputError(f"unknown expected keys {unknown}, expected some of {list(actual)}")
    wrong = {k: (v, actual[k]) for k, v in expected.items() if actual[k] != v}
    return CheckResult(
        name=EXPECTED_VALUES,
        applicable=True,
        passed=not wrong,
        witness=None if not wrong else f"expected vs actual {wrong}",
    )


@app.command()
def verify(
    graph: str = typer.Argument(None, help="graph JSON file, - for stdin"),
    suite: str = typer.Option(None, help="built-in corpus to run instead of a file: small"),
    seed: int = typer.Option(0, help="seed for the random part of the corpus"),
):
    """
    Run every applicable check and exit non-zero if any of them fails.
    """
    with exit_codes():
        if suite is not None:
            if suite != "small":
                raise InputError(f"unknown suite {suite!r}, expected 'small'")
            report = small_suite(seed)
        elif graph is not None:
            g, data = load_graph(graph)
            report = verify_all(g)
            if isinstance(data.get("expected"), dict):
                report = report.merged(VerificationReport(checks=[expectation_check(g, data["expected"])]))
        else:
            raise InputError("pass a graph file or --suite small")
        emit(
            {
                "ok": report.ok,
                "executed_kinds": sorted(report.executed_kinds()),
                "summary": report.summary(),
                "failures": [c.model_dump() for c in report.failures()],
            }
        )
        if not report.ok:
            for c in report.failures():
                typer.echo(f"check failed: {c.name}: {c.witness}", err=True)
            raise typer.Exit(EXIT_FAILURE)


GENERATOR_PARAMS = {
    "random_tree": ("n", "neg_prob"),
    "random_unicyclic": ("n", "cycle_length", "neg_prob"),
    "random_cactus": ("n", "cycles", "profile", "neg_prob"),
    "random_signed": ("n", "edge_prob", "neg_prob"),
    "theta_graph": ("a", "b", "c", "signs"),
    "cycle": ("signs",),
    "complete_join_neg": ("k",),
}


@app.command()
def generate(
    kind: str = typer.Argument(..., help="tree, unicyclic, cactus, signed, theta, cycle or join"),
    n: int = typer.Option(None, help="number of vertices"),
    seed: int = typer.Option(0, help="random seed"),
    cycles: int = typer.Option(None, help="cactus: number of cycles"),
    cycle_length: int = typer.Option(None, help="unicyclic: cycle length"),
    profile: str = typer.Option(None, help="cactus: random, unbalanced, balanced or mixed"),
    edge_prob: float = typer.Option(None, help="signed: edge probability"),
    neg_prob: float = typer.Option(None, help="probability of a negative edge"),
    lengths: str = typer.Option(None, help="theta: path lengths a,b,c"),
    signs: str = typer.Option(None, help="cycle: signs like ++--; theta: one group per path, +-,-+,++"),
    k: int = typer.Option(None, help="join: size of each clique"),
):
    """
    Print a generated graph as canonical JSON.
    """
    with exit_codes():
        values: dict = {
            "n": n,
            "cycles": cycles,
            "cycle_length": cycle_length,
            "profile": profile,
            "edge_prob": edge_prob,
            "neg_prob": neg_prob,
            "k": k,
        }
        if lengths is not None:
            parts = [p.strip() for p in lengths.split(",")]
            if len(parts) != 3 or not all(p.isdigit() for p in parts):
                raise InputError(f"--lengths takes three integers a,b,c, got {lengths!r}")
            values["a"], values["b"], values["c"] = (int(p) for p in parts)
        if signs is not None:
            groups = [parse_signs(group.strip()) for group in signs.split(",")]
            values["signs"] = groups if len(groups) > 1 else groups[0]
        name = GENERATOR_ALIASES.get(kind, kind)
        wanted = GENERATOR_PARAMS.get(name, ())
        params = {key: values[key] for key in wanted if values.get(key) is not None}
        typer.echo(build_graph(name, params, seed).to_json())


@app.command()
def sweep(
    n: int = typer.Option(None, help="sweep this order only"),
    n_min: int = typer.Option(None, help="smallest order"),
    n_max: int = typer.Option(None, help="largest order"),
    exhaustive: bool = typer.Option(False, help="every labelled signed graph instead of random samples"),
    samples: int = typer.Option(100, help="random mode: number of graphs"),
    seed: int = typer.Option(0, help="random mode: seed"),
    workers: int = typer.Option(None, help="worker processes, default all cores"),
    connected_only: bool = typer.Option(False, help="skip disconnected graphs"),
    cactus: str = typer.Option("any", help="any, cactus or non-cactus"),
    checks: str = typer.Option(None, help="comma separated check names"),
    config: str = typer.Option(None, help="sweep config file path"),
):
    """
    Run checks over a whole space of graphs and print the statistics.
    """
    with exit_codes():
        if config is not None:
            cfg = load_config(config)
        else:
            low = n_min if n_min is not None else n
            high = n_max if n_max is not None else n
            if low is None or high is None:
                raise InputError("pass --n, or --n-min and --n-max, or --config")
            fields: dict = {
                "n_min": low,
                "n_max": high,
                "mode": "exhaustive" if exhaustive else "random",
                "samples": samples,
                "seed": seed,
                "workers": workers,
                "connected_only": connected_only,
                "cactus": cactus,
            }
            if checks is not None:
                fields["checks"] = [c.strip() for c in checks.split(",") if c.strip()]
            cfg = SweepConfig.model_validate(fields)
        emit(run_sweep(cfg).summary())


@app.command("find-theta")
def find_theta(
    max_sum: int = typer.Option(10, help="largest total path length a + b + c"),
    min_length: int = typer.Option(1, help="shortest allowed path"),
    output: str = typer.Option("-", help="findings file (JSON lines), - for stdout"),
    config: str = typer.Option(None, help="sweep config file path"),
):
    """
    Search theta graphs for equal-count cycles that share edges, with nullity 1 and above.
    """
    with exit_codes():
        if config is not None:
            cfg = load_config(config)
        else:
            cfg = SweepConfig(mode="theta", max_path_sum=max_sum, min_path_length=min_length)
        findings = find_shared_cycle_examples(cfg)
        write_findings(findings, output)
        witnesses = sum(1 for f in findings if f.nullity == 1)
        typer.echo(f"{witnesses} witnesses, {len(findings) - witnesses} contrasts", err=True)


@app.command("export-dot")
def export_dot(
    graph: str = typer.Argument("-", help="graph JSON file, - for stdin"),
    output: str = typer.Option("-", help="DOT file, - for stdout"),
):
    """
    Write the graph in DOT; positive edges solid, negative edges dashed.
    """
    with exit_codes():
        g, _ = load_graph(graph)
        write(output, to_dot(g))


def main():
    if len(sys.argv) == 1:
        sys.argv.append("--help")
    app()


if __name__ == "__main__":
    main()
