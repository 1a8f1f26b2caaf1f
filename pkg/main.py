#!/usr/bin/env python3
"""
Preserver Toolkit - Main Entry Point
Pairwise distance preservers, tiebreaking schemes and lower-bound instances
"""
import functools
import os
import sys
from math import comb
from typing import Callable, Dict, List, Optional

import click
from rich.console import Console

# 현재 디렉토리를 sys.path에 추가
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from builder.bipartite_lift import bipartite_lift, contract
from builder.dw_preserver import build_dw_preserver, count_branching_triples, oriented_union
from builder.uu_preserver import build_uu_preserver
from builder.verification import verify_preserver, verify_subset_preserver
from formats.edge_list import ParsedGraph, dump_instance, load_instance, parse_graph, serialize_graph, serialize_pairs
from lowerbound.inner import gen_inner, inner_from_graph
from lowerbound.obstacle import check_path_structure, forced_edge_count, forced_edges, necessity_sweep, obstacle_product
from lowerbound.outer import gen_outer, validate_outer
from models.errors import PreserverError
from models.graph import Graph, PairSet
from models.lowerbound import OuterInstance, ProductMode
from models.preserver import Parity
from models.report import REQUIRED_METRICS, Report, Violation
from pathfinder.random_graphs import random_bipartite, random_graph, random_pairs
from publisher.report_publisher import FORMATS, ReportPublisher, digests
from settings import load_config, setup_logging
from tiebreaker.consistent import consistent_scheme

err_console = Console(stderr=True)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _load(graph_path: str, pairs_path: Optional[str] = None) -> ParsedGraph:
    pairs_text = _read(pairs_path) if pairs_path else None
    return parse_graph(_read(graph_path), pairs_text, source=graph_path, pairs_source=pairs_path)


def _counts(graph: Graph, pairs: PairSet) -> Dict[str, int]:
    return {"node_count": graph.n, "edge_count": graph.m, "pair_count": len(pairs)}


def format_option(fn: Callable) -> Callable:
    return click.option("--format", "fmt", type=click.Choice(FORMATS), default=None,
                        help="Report format (default: config report.format)")(fn)


def cap_option(fn: Callable) -> Callable:
    return click.option("--cap", type=int, default=None,
                        help="Shortest-path enumeration cap (default: config enumeration.cap)")(fn)


def reports(name: str) -> Callable:
    """
    서브커맨드 본문이 반환한 Report를 출력하고 종료 코드를 맞춘다.
    PreserverError는 실패 리포트로 바꾼다.
    """
    def decorator(fn: Callable) -> Callable:
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            ctx = click.get_current_context()
            fmt = kwargs.pop("fmt", None)
            try:
                report = fn(*args, **kwargs)
            except PreserverError as e:
                err_console.print(f"❌ {name}: {e}")
                report = Report.build(
                    name,
                    {key: 0 for key in REQUIRED_METRICS},
                    [Violation(type(e).__name__, (), str(e))],
                )
            click.echo(ctx.obj["publisher"].publish(report, fmt), nl=False)
            ctx.exit(report.exit_code)
        return wrapper
    return decorator


def _cap(ctx: click.Context, cap: Optional[int]) -> int:
    return cap if cap is not None else int(ctx.obj["config"]["enumeration"]["cap"])


@click.group(epilog="""
Examples:

  python main.py preserve --mode dw -g g.txt -p p.txt -o h.txt

  python main.py verify -g g.txt -p p.txt -H h.txt

  python main.py lowerbound-build --mode weighted --nmid 2 --D 4 --inner-len 3 -o out/lb
""")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="Alternate config.yaml")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str]):
    """Preserver Toolkit - distance preservers and lower-bound instances"""
    config = load_config(config_path)
    setup_logging(config)
    ctx.obj = {"config": config, "publisher": ReportPublisher(config)}


@cli.command()
@click.option("--mode", type=click.Choice(["dw", "uu"]), required=True, help="dw: directed/weighted, uu: undirected/unweighted")
@click.option("-g", "--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-p", "--pairs", "pairs_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-o", "--out", "out_path", type=click.Path(dir_okay=False), default=None, help="Preserver graph file")
@format_option
@click.pass_context
@reports("preserve")
def preserve(ctx: click.Context, mode: str, graph_path: str, pairs_path: str, out_path: Optional[str]):
    """Build a distance preserver"""
    parsed = _load(graph_path, pairs_path)
    graph, pairs = parsed.graph, parsed.pairs

    metrics: Dict[str, int] = {}
    if mode == "dw":
        preserver = build_dw_preserver(graph, pairs)
        metrics["groups"] = len(preserver.groups)
        metrics["max_branching_triples"] = max((g.branching_triples for g in preserver.groups), default=0)
    else:
        max_repairs = int(ctx.obj["config"]["lazy"]["max_repairs"])
        preserver, partition = build_uu_preserver(graph, pairs, max_repairs=max_repairs)
        metrics["branching_edges"] = len(partition.leftover_branching)
        metrics["matching_classes"] = len(partition.classes)
        metrics["largest_n_classes_edges"] = sum(size for _, size in partition.largest_classes(graph.n))

    metrics.update(_counts(preserver.subgraph, pairs))
    metrics["host_edge_count"] = graph.m
    violations = verify_preserver(graph, preserver.subgraph, pairs)

    if out_path:
        ctx.obj["publisher"].write_artifact(out_path, serialize_graph(preserver.subgraph, provenance=preserver.provenance))
    return Report.build("preserve", metrics, violations, digests([graph_path, pairs_path]))


@cli.command()
@click.option("-g", "--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-p", "--pairs", "pairs_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-H", "--subgraph", "sub_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--subset-from-pairs", is_flag=True, help="Demand S x S for the nodes spanned by the pairs file")
@format_option
@click.pass_context
@reports("verify")
def verify(ctx: click.Context, graph_path: str, pairs_path: str, sub_path: str, subset_from_pairs: bool):
    """Check that H preserves every demanded distance of G"""
    parsed = _load(graph_path, pairs_path)
    sub = _load(sub_path).graph
    parsed.graph.require_same_shape(sub)

    pairs = parsed.pairs
    if subset_from_pairs:
        nodes = pairs.endpoints()
        violations = verify_subset_preserver(parsed.graph, sub, nodes)
        metrics = _counts(sub, pairs)
        metrics["pair_count"] = len(nodes) * (len(nodes) - 1)
    else:
        violations = verify_preserver(parsed.graph, sub, pairs)
        metrics = _counts(sub, pairs)
    metrics["host_edge_count"] = parsed.graph.m
    return Report.build("verify", metrics, violations, digests([graph_path, pairs_path, sub_path]))


@cli.command()
@click.option("-g", "--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-p", "--pairs", "pairs_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-o", "--out", "out_path", type=click.Path(dir_okay=False), default=None, help="Lifted graph file")
@click.option("--pairs-out", type=click.Path(dir_okay=False), default=None, help="Lifted pairs file")
@format_option
@click.pass_context
@reports("lift")
def lift(ctx: click.Context, graph_path: str, pairs_path: str, out_path: Optional[str], pairs_out: Optional[str]):
    """Bipartite preserver lift of (G, P)"""
    parsed = _load(graph_path, pairs_path)
    result = bipartite_lift(parsed.graph, parsed.pairs)

    publisher = ctx.obj["publisher"]
    if out_path:
        publisher.write_artifact(out_path, serialize_graph(result.lifted))
    if pairs_out:
        publisher.write_artifact(pairs_out, serialize_pairs(result.lifted_pairs))

    metrics = _counts(result.lifted, result.lifted_pairs)
    metrics["even_pairs"] = sum(1 for p in result.parity.values() if p is Parity.EVEN)
    metrics["odd_pairs"] = sum(1 for p in result.parity.values() if p is Parity.ODD)
    return Report.build("lift", metrics, [], digests([graph_path, pairs_path]))


@cli.command("contract")
@click.option("-g", "--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-p", "--pairs", "pairs_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-H", "--subgraph", "sub_path", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Subgraph of the lifted graph")
@click.option("-o", "--out", "out_path", type=click.Path(dir_okay=False), default=None)
@click.option("--check/--no-check", default=True, help="Verify the contraction as a preserver of (G, P)")
@format_option
@click.pass_context
@reports("contract")
def contract_command(ctx: click.Context, graph_path: str, pairs_path: str, sub_path: str,
                     out_path: Optional[str], check: bool):
    """Contract a lifted subgraph back onto the original nodes"""
    parsed = _load(graph_path, pairs_path)
    result = bipartite_lift(parsed.graph, parsed.pairs)
    lifted_sub = _load(sub_path).graph
    contracted = contract(lifted_sub, result)

    if out_path:
        ctx.obj["publisher"].write_artifact(out_path, serialize_graph(contracted))

    violations = verify_preserver(parsed.graph, contracted, parsed.pairs) if check else []
    metrics = _counts(contracted, parsed.pairs)
    metrics["lifted_edge_count"] = lifted_sub.m
    return Report.build("contract", metrics, violations, digests([graph_path, pairs_path, sub_path]))


@cli.command()
@click.option("-g", "--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-p", "--pairs", "pairs_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Count triples of the oriented consistent path union instead of G")
@format_option
@click.pass_context
@reports("triples")
def triples(ctx: click.Context, graph_path: str, pairs_path: Optional[str]):
    """Count branching triples"""
    parsed = _load(graph_path, pairs_path)
    violations: List[Violation] = []

    if pairs_path:
        oriented = oriented_union(consistent_scheme(parsed.graph, parsed.pairs))
        count = count_branching_triples(oriented)
        bound = comb(len(parsed.pairs), 3)
        if count > bound:
            violations.append(Violation("triple_bound", (count, bound), f"{count} branching triples > C(p,3) = {bound}"))
        metrics = _counts(oriented, parsed.pairs)
        metrics["triple_bound"] = bound
        if oriented.m > 2 * oriented.n + count:
            violations.append(Violation("edge_bound", (oriented.m,), f"{oriented.m} edges > 2n + {count}"))
    else:
        count = count_branching_triples(parsed.graph)
        metrics = _counts(parsed.graph, parsed.pairs)

    metrics["branching_triples"] = count
    return Report.build("triples", metrics, violations, digests([graph_path, pairs_path]))


def _outer_from_files(outer_path: str, outer_pairs_path: str) -> OuterInstance:
    parsed = _load(outer_path, outer_pairs_path)
    return OuterInstance.from_layers(parsed.graph, parsed.pairs, parsed.layers or {})


@cli.command("lowerbound-build")
@click.option("--mode", type=click.Choice([m.value for m in ProductMode]), required=True)
@click.option("--nmid", type=int, default=2, show_default=True, help="Middle nodes of the generated outer instance")
@click.option("--D", "degree", type=int, default=4, show_default=True, help="Even middle degree")
@click.option("--inner-len", type=int, default=3, show_default=True, help="Inner path length")
@click.option("--outer", "outer_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Outer graph file with 'layer' annotations (0/1/2)")
@click.option("--outer-pairs", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--inner", "inner_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Inner graph file used for every middle node")
@click.option("--inner-pairs", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("-o", "--out", "prefix", type=click.Path(), default=None,
              help="Output prefix: <prefix>.graph.txt, <prefix>.pairs.txt, <prefix>.instance.json")
@cap_option
@format_option
@click.pass_context
@reports("lowerbound-build")
def lowerbound_build(ctx: click.Context, mode: str, nmid: int, degree: int, inner_len: int,
                     outer_path: Optional[str], outer_pairs: Optional[str], inner_path: Optional[str],
                     inner_pairs: Optional[str], prefix: Optional[str], cap: Optional[int]):
    """Build and check an obstacle-product instance"""
    mode = ProductMode(mode)
    cap = _cap(ctx, cap)

    if bool(outer_path) != bool(outer_pairs):
        raise click.UsageError("--outer and --outer-pairs go together")
    if bool(inner_path) != bool(inner_pairs):
        raise click.UsageError("--inner and --inner-pairs go together")

    if outer_path:
        outer = _outer_from_files(outer_path, outer_pairs)
    else:
        outer = gen_outer(nmid, degree, weighted=mode is ProductMode.WEIGHTED)
    violations = validate_outer(outer, cap)

    if inner_path:
        parsed = _load(inner_path, inner_pairs)
        shared = inner_from_graph(parsed.graph, parsed.pairs, parsed.layers)

        def factory(middle: int, pair_count: int):
            return shared
    else:
        layered = mode is ProductMode.UNWEIGHTED

        def factory(middle: int, pair_count: int):
            return gen_inner(pair_count, inner_len, layered=layered)

    inst = obstacle_product(outer, factory, mode)
    violations.extend(check_path_structure(inst, cap))

    first, last, inner_nodes = inst.node_count_breakdown()
    metrics = _counts(inst.graph, inst.demanded)
    metrics.update({
        "subset_size": len(inst.subset),
        "scale": inst.scale,
        "inner_copies": len(inst.replacements),
        "first_layer_nodes": first,
        "last_layer_nodes": last,
        "inner_nodes": inner_nodes,
    })
    if not violations:
        metrics["forced_edge_count"] = forced_edge_count(inst, cap)

    if prefix:
        publisher = ctx.obj["publisher"]
        publisher.write_artifact(f"{prefix}.graph.txt", serialize_graph(inst.graph))
        publisher.write_artifact(f"{prefix}.pairs.txt", serialize_pairs(inst.demanded))
        publisher.write_artifact(f"{prefix}.instance.json", dump_instance(inst))

    return Report.build("lowerbound-build", metrics, violations,
                        digests([outer_path, outer_pairs, inner_path, inner_pairs]))


@cli.command("lowerbound-check")
@click.option("--instance", "instance_path", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Instance manifest written by lowerbound-build")
@click.option("--sweep", is_flag=True, help="Delete each forced edge and confirm some demanded distance changes")
@cap_option
@format_option
@click.pass_context
@reports("lowerbound-check")
def lowerbound_check(ctx: click.Context, instance_path: str, sweep: bool, cap: Optional[int]):
    """Re-audit an obstacle-product instance"""
    cap = _cap(ctx, cap)
    inst = load_instance(_read(instance_path), source=instance_path)

    violations = check_path_structure(inst, cap)
    metrics = _counts(inst.graph, inst.demanded)
    metrics["subset_size"] = len(inst.subset)
    if not violations:
        forced = forced_edges(inst, cap)
        metrics["forced_edge_count"] = len(forced)
        if sweep:
            removable = necessity_sweep(inst, forced)
            metrics["removable_forced_edges"] = len(removable)
            violations.extend(
                Violation("unnecessary_edge", edge, "deleting the edge keeps every demanded distance")
                for edge in removable
            )
    return Report.build("lowerbound-check", metrics, violations, digests([instance_path]))


@cli.command()
@click.option("--kind", type=click.Choice(["graph", "bipartite", "outer", "inner"]), required=True)
@click.option("--seed", type=int, default=None, help="Random seed (default: config generator.seed)")
@click.option("-n", "--nodes", type=int, default=20, show_default=True)
@click.option("-m", "--edges", type=int, default=40, show_default=True)
@click.option("--pairs", "pair_count", type=int, default=5, show_default=True)
@click.option("--directed", is_flag=True)
@click.option("--weighted", is_flag=True)
@click.option("--nmid", type=int, default=2, show_default=True)
@click.option("--D", "degree", type=int, default=4, show_default=True)
@click.option("--len", "length", type=int, default=3, show_default=True)
@click.option("--layered", is_flag=True)
@click.option("-o", "--out", "prefix", type=click.Path(), required=True,
              help="Output prefix: <prefix>.graph.txt, <prefix>.pairs.txt")
@format_option
@click.pass_context
@reports("gen")
def gen(ctx: click.Context, kind: str, seed: Optional[int], nodes: int, edges: int, pair_count: int,
        directed: bool, weighted: bool, nmid: int, degree: int, length: int, layered: bool, prefix: str):
    """Generate a random or structured instance"""
    config = ctx.obj["config"]["generator"]
    seed = seed if seed is not None else int(config["seed"])

    layers = None
    if kind == "graph":
        graph = random_graph(nodes, edges, directed, weighted, int(config["max_weight"]), seed)
        pairs = random_pairs(graph, pair_count, seed)
    elif kind == "bipartite":
        graph = random_bipartite(nodes, edges, seed)
        pairs = random_pairs(graph, pair_count, seed)
    elif kind == "outer":
        outer = gen_outer(nmid, degree, weighted)
        graph, pairs, layers = outer.graph, outer.pairs, outer.layers()
    else:
        inner = gen_inner(pair_count, length, layered)
        graph, pairs, layers = inner.graph, inner.pairs, inner.layers

    publisher = ctx.obj["publisher"]
    publisher.write_artifact(f"{prefix}.graph.txt", serialize_graph(graph, layers))
    publisher.write_artifact(f"{prefix}.pairs.txt", serialize_pairs(pairs))
    return Report.build("gen", _counts(graph, pairs))


@cli.command()
@click.option("-g", "--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-p", "--pairs", "pairs_path", type=click.Path(exists=True, dir_okay=False), default=None)
@format_option
@click.pass_context
@reports("stats")
def stats(ctx: click.Context, graph_path: str, pairs_path: Optional[str]):
    """Node/edge/pair counts, branching triples and matching-class sizes"""
    parsed = _load(graph_path, pairs_path)
    graph, pairs = parsed.graph, parsed.pairs
    metrics = _counts(graph, pairs)

    if graph.directed:
        metrics["branching_triples"] = count_branching_triples(graph)
    elif len(pairs):
        metrics["branching_triples"] = count_branching_triples(oriented_union(consistent_scheme(graph, pairs)))

    if len(pairs) and not graph.directed and not graph.weighted:
        max_repairs = int(ctx.obj["config"]["lazy"]["max_repairs"])
        _, partition = build_uu_preserver(graph, pairs, max_repairs=max_repairs)
        metrics["branching_edges"] = len(partition.leftover_branching)
        metrics["matching_classes"] = len(partition.classes)
        for (source, residue), size in partition.class_sizes().items():
            metrics[f"class_s{source}_r{residue}"] = size

    return Report.build("stats", metrics, [], digests([graph_path, pairs_path]))


def main():
    """메인 진입점"""
    cli(prog_name="preserver")


if __name__ == "__main__":
    main()
