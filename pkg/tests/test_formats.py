"""
그래프/쌍 파일 형식, 인스턴스 매니페스트, 리포트, 설정 테스트
"""
import json

import pytest
from pydantic import ValidationError

from formats.edge_list import (
    dump_instance,
    load_instance,
    parse_graph,
    parse_pairs,
    serialize_graph,
    serialize_pairs,
)
from lowerbound.inner import gen_inner
from lowerbound.obstacle import check_path_structure, obstacle_product
from lowerbound.outer import gen_outer
from models.errors import Disconnected, InvariantViolation, ParseError
from models.graph import Graph, PairSet
from models.lowerbound import ProductMode
from models.report import Report, Status, Violation
from publisher.report_publisher import ReportPublisher, digests, emit_report, file_digest
from settings import DEFAULTS, load_config

WEIGHTED = """\
# 가중 무방향 삼각형
n=3 directed=0 weighted=1
0 1 2
1 2 3   # 끝 주석
0 2 7
"""


class TestParseGraph:
    def test_weighted_triangle(self):
        parsed = parse_graph(WEIGHTED, "0 2\n")
        assert parsed.graph.n == 3
        assert parsed.graph.weighted and not parsed.graph.directed
        assert parsed.graph.edges == ((0, 1, 2), (0, 2, 7), (1, 2, 3))
        assert parsed.pairs.pairs == ((0, 2),)
        assert parsed.layers is None

    def test_unweighted_default_weight(self):
        parsed = parse_graph("n=2 directed=1 weighted=0\n1 0\n")
        assert parsed.graph.edges == ((1, 0, 1),)
        assert len(parsed.pairs) == 0

    def test_layers(self):
        parsed = parse_graph("n=3 directed=0 weighted=0\n0 1\n1 2\nlayer 0 0\nlayer 1 1\nlayer 2 2\n")
        assert parsed.layers == {0: 0, 1: 1, 2: 2}

    def test_duplicate_undirected_edge(self):
        with pytest.raises(ParseError) as excinfo:
            parse_graph("n=3 directed=0 weighted=0\n0 1\n1 0\n", source="g.txt")
        assert excinfo.value.line == 3
        assert "g.txt:3" in str(excinfo.value)

    def test_antiparallel_directed_edges_allowed(self):
        parsed = parse_graph("n=2 directed=1 weighted=0\n0 1\n1 0\n")
        assert parsed.graph.m == 2

    def test_zero_weight(self):
        with pytest.raises(InvariantViolation):
            parse_graph("n=2 directed=0 weighted=1\n0 1 0\n")

    def test_weight_in_unweighted_graph(self):
        with pytest.raises(InvariantViolation):
            parse_graph("n=2 directed=0 weighted=0\n0 1 5\n")

    @pytest.mark.parametrize("text,line", [
        ("", 1),
        ("n=3 weighted=0\n", 1),
        ("n=3 directed=2 weighted=0\n", 1),
        ("n=3 directed=0 weighted=0\n0 1 2 3\n", 2),
        ("n=3 directed=0 weighted=0\n0 x\n", 2),
        ("n=3 directed=0 weighted=0\n0 3\n", 2),
        ("n=3 directed=0 weighted=0\nlayer 0 0\n\nlayer 0 1\n", 4),
    ])
    def test_format_errors(self, text, line):
        with pytest.raises(ParseError) as excinfo:
            parse_graph(text)
        assert excinfo.value.line == line

    def test_pair_errors(self):
        graph_text = "n=3 directed=0 weighted=0\n0 1\n"
        with pytest.raises(ParseError):
            parse_graph(graph_text, "0\n")
        with pytest.raises(ParseError):
            parse_graph(graph_text, "0 5\n")
        with pytest.raises(Disconnected):
            parse_graph(graph_text, "0 2\n")
        with pytest.raises(InvariantViolation):
            parse_graph(graph_text, "0 1\n0 1\n")

    def test_parse_pairs_keeps_order(self):
        assert parse_pairs("# 쌍\n2 0\n0 1\n", 3) == [(2, 0), (0, 1)]


class TestSerialize:
    def test_round_trip(self):
        graph = Graph(4, False, True, ((0, 1, 3), (1, 2, 1), (2, 3, 9)))
        layers = {0: 0, 1: 1, 2: 2, 3: 3}
        parsed = parse_graph(serialize_graph(graph, layers), serialize_pairs(PairSet(4, ((0, 3), (3, 1)))))
        assert parsed.graph == graph
        assert parsed.layers == layers
        assert parsed.pairs.pairs == ((0, 3), (3, 1))

    def test_provenance_comments(self):
        graph = Graph(3, edges=((0, 1), (1, 2)))
        text = serialize_graph(graph, provenance={(0, 1): (0, 2)})
        assert "0 1  # pair 0 2" in text.splitlines()
        assert "1 2" in text.splitlines()
        assert parse_graph(text).graph == graph

    def test_deterministic(self):
        graph = Graph(3, edges=((1, 2), (0, 1)))
        assert serialize_graph(graph) == serialize_graph(Graph(3, edges=((0, 1), (1, 2))))


class TestInstanceManifest:
    def test_round_trip(self):
        inst = obstacle_product(gen_outer(2, 4), lambda v, k: gen_inner(k, 2, layered=True), ProductMode.UNWEIGHTED)
        text = dump_instance(inst)
        again = load_instance(text)
        assert again.graph == inst.graph
        assert again.demanded == inst.demanded
        assert again.subset == inst.subset
        assert check_path_structure(again) == []
        assert dump_instance(again) == text

    def test_bad_json(self):
        with pytest.raises(ParseError):
            load_instance("{not json", source="x.json")

    def test_missing_field(self):
        with pytest.raises(ParseError):
            load_instance(json.dumps({"graph": {"n": 1, "directed": False, "weighted": False, "edges": []}}))


METRICS = {"node_count": 3, "edge_count": 2, "pair_count": 1}


class TestReport:
    def test_pass(self):
        report = Report.build("verify", METRICS)
        assert report.status is Status.PASS
        assert report.passed and report.exit_code == 0

    def test_fail(self):
        report = Report.build("verify", METRICS, [Violation("distance_mismatch", (0, 2), "4 != 3")])
        assert report.status is Status.FAIL
        assert report.exit_code == 1
        assert report.violations[0]["subject"] == [0, 2]

    def test_status_must_match_violations(self):
        with pytest.raises(ValidationError):
            Report(command="verify", metrics=METRICS, violations=[], status=Status.FAIL)

    def test_required_metrics(self):
        with pytest.raises(ValidationError):
            Report.build("verify", {"node_count": 1})

    def test_frozen(self):
        report = Report.build("verify", METRICS)
        with pytest.raises(ValidationError):
            report.command = "other"

    def test_json_is_sorted_and_stable(self):
        report = Report.build("stats", dict(METRICS, branching_triples=0), inputs={"g.txt": "ab"})
        text = emit_report(report, "json")
        assert text == emit_report(Report.build("stats", dict(METRICS, branching_triples=0), inputs={"g.txt": "ab"}))
        data = json.loads(text)
        assert list(data) == sorted(data)
        assert data["status"] == "pass"
        assert data["metrics"]["pair_count"] == 1

    def test_text_format(self):
        report = Report.build("verify", METRICS, [Violation("foreign_edge", (0, 1), "weight differs")])
        text = emit_report(report, "text")
        assert text.startswith("command: verify\n")
        assert "status:  fail" in text
        assert "foreign_edge" in text
        assert "\x1b[" not in text

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit_report(Report.build("verify", METRICS), "yaml")


class TestPublisher:
    def test_digests(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("n=1 directed=0 weighted=0\n")
        table = digests([str(path), None])
        assert table == {"g.txt": file_digest(str(path))}
        assert len(table["g.txt"]) == 64

    def test_publish_writes_file(self, tmp_path):
        publisher = ReportPublisher({"report": {"format": "text"}})
        out = tmp_path / "nested" / "report.txt"
        text = publisher.publish(Report.build("verify", METRICS), out=str(out))
        assert out.read_text() == text
        assert text.startswith("command: verify")


class TestSettings:
    def test_defaults_without_file(self, tmp_path):
        assert load_config(str(tmp_path / "missing.yaml")) == DEFAULTS

    def test_override_merges(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("enumeration:\n  cap: 50\nreport:\n  format: text\n")
        config = load_config(str(path))
        assert config["enumeration"]["cap"] == 50
        assert config["report"]["format"] == "text"
        assert config["lazy"]["max_repairs"] == DEFAULTS["lazy"]["max_repairs"]

    def test_env_expansion(self, tmp_path, monkeypatch):
        monkeypatch.setenv("PRESERVER_TEST_LOG", str(tmp_path / "run.log"))
        path = tmp_path / "config.yaml"
        path.write_text("logging:\n  file: ${PRESERVER_TEST_LOG}\n")
        assert load_config(str(path))["logging"]["file"] == str(tmp_path / "run.log")

    def test_env_selects_file(self, tmp_path, monkeypatch):
        path = tmp_path / "alt.yaml"
        path.write_text("lazy:\n  max_repairs: 7\n")
        monkeypatch.setenv("PRESERVER_CONFIG", str(path))
        assert load_config()["lazy"]["max_repairs"] == 7

    def test_non_mapping(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ValueError):
            load_config(str(path))
