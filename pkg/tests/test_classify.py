import pytest

from msnumber.algebra.gf2core import rank
from msnumber.algebra.quadform import brute_force_weight, from_graph
from msnumber.config.schema import REPRESENTATIVE_POLICY, ClassificationReport
from msnumber.errors import CapExceededError
from msnumber.graphs.formats import parse_graph6, to_graph6
from msnumber.graphs.generators import all_labeled_graphs, random_bipartite_graph
from msnumber.graphs.graph import make_empty, pivot, pivot_minor_delete
from msnumber.pipeline.classify import (
    ClassAccumulator,
    ClassificationPipeline,
    classify_stream,
    pivot_orbit,
)
from msnumber.states.closedforms import make_complete, make_path
from msnumber.states.graphstate import ms_number
from msnumber.utils.export import ReportExporter


def order_three() -> list:
    return list(all_labeled_graphs(3))


class TestClassifyStream:

    def test_order_three(self):
        report = classify_stream(order_three())
        assert report.total == 8 and report.malformed == 0
        classes = report.as_mapping()
        assert sorted(classes) == [(3, 0), (3, 2), (3, 4)]
        assert classes[(3, 0)].representatives == ["B?"]
        assert classes[(3, 2)].count == 6
        assert classes[(3, 2)].representatives == ["BG", "BO", "B_"]
        assert classes[(3, 4)].representatives == ["Bw"]

    def test_representative_cap(self):
        report = classify_stream(order_three(), representatives=1)
        assert report.as_mapping()[(3, 2)].representatives == ["BG"]

    def test_input_order_does_not_matter(self, rng):
        graphs = [g for n in range(1, 5) for g in all_labeled_graphs(n)]
        shuffled = [graphs[i] for i in rng.permutation(len(graphs))]
        first, second = classify_stream(graphs), classify_stream(shuffled)
        assert first == second
        assert ReportExporter.structured(first) == ReportExporter.structured(second)
        assert ReportExporter.classification_tsv(first) == ReportExporter.classification_tsv(second)

    def test_counts_sum_to_total(self):
        report = classify_stream(g for n in range(1, 6) for g in all_labeled_graphs(n))
        assert report.total == 1 + 2 + 8 + 64 + 1024
        assert sum(entry.count for entry in report.classes) == report.total
        keys = [(entry.n, entry.w) for entry in report.classes]
        assert keys == sorted(keys)

    def test_merge_matches_single_pass(self, rng):
        graphs = [g for n in range(1, 5) for g in all_labeled_graphs(n)]
        parts = [ClassAccumulator() for _ in range(3)]
        for g in graphs:
            parts[int(rng.integers(0, 3))].add(g)
        a, b, c = parts
        left = a.merge(b).merge(c).report()
        right = a.merge(b.merge(c)).report()
        assert left == right == classify_stream(graphs)


class TestPipeline:

    def test_malformed_lines_are_reported(self):
        report = ClassificationPipeline(show_progress=False).run(["Bw", "A_x", "", "B?"])
        assert report.total == 2
        assert report.malformed == 1
        assert report.errors[0].line == 2
        assert "trailing" in report.errors[0].message

    def test_progress_callback(self):
        messages = []
        pipeline = ClassificationPipeline(
            show_progress=False, progress_callback=lambda message, count: messages.append((message, count))
        )
        pipeline.run(to_graph6(g) for g in all_labeled_graphs(4))
        assert messages[-1] == ("Classification complete", 64)

    def test_atlas_stream(self, atlas, rng):
        lines = [to_graph6(g) for g in atlas if g.n <= 6]
        report = ClassificationPipeline(show_progress=False).run(lines)
        assert report.total == len(lines) == 208
        assert report.malformed == 0
        assert report.representative_policy == REPRESENTATIVE_POLICY
        for entry in report.classes:
            reps = [parse_graph6(g6) for g6 in entry.representatives]
            assert [(g.size, to_graph6(g)) for g in reps] == sorted((g.size, to_graph6(g)) for g in reps)
            for g in reps:
                assert (g.n, brute_force_weight(from_graph(g))) == (entry.n, entry.w)
        shuffled = [lines[i] for i in rng.permutation(len(lines))]
        again = ClassificationPipeline(show_progress=False).run(shuffled)
        assert ReportExporter.classification_tsv(again) == ReportExporter.classification_tsv(report)
        assert ReportExporter.structured(again) == ReportExporter.structured(report)

    def test_header_line_skipped(self):
        report = ClassificationPipeline(show_progress=False).run([">>graph6<<", ">>graph6<<Bw"])
        assert report.total == 1 and report.malformed == 0


class TestExport:

    def test_tsv(self):
        text = ReportExporter.classification_tsv(classify_stream(order_three()))
        assert text == "3\t0\t1\tB?\n3\t2\t6\tBG,BO,B_\n3\t4\t1\tBw\n"

    def test_structured_round_trip(self):
        report = classify_stream(order_three())
        rendered = ReportExporter.structured(report)
        assert ClassificationReport.model_validate_json(rendered) == report

    def test_export_file_adds_suffix(self, tmp_path):
        path = ReportExporter.export_file("3\t4\t1\tBw\n", str(tmp_path / "report"))
        assert path.suffix == ".tsv"
        assert path.read_text(encoding="utf-8") == "3\t4\t1\tBw\n"


class TestPivotOrbit:

    def test_single_edge(self):
        assert pivot_orbit(make_path(2)) == frozenset({make_path(2)})

    def test_edgeless(self):
        g = make_empty(4)
        assert pivot_orbit(g) == frozenset({g})

    def test_path_members_keep_their_order(self):
        orbit = pivot_orbit(make_path(4))
        assert len(orbit) > 1
        assert {g.n for g in orbit} == {4}
        middle = pivot(make_path(4), 1, 2)
        assert middle.edges() == [(0, 2), (0, 3), (1, 2), (1, 3)]
        assert middle in orbit
        assert rank(middle.adjacency) == 2 and rank(make_path(4).adjacency) == 4

    def test_bipartite_orbit_members_satisfy_the_minor_identity(self, rng):
        for _ in range(20):
            g = random_bipartite_graph(int(rng.integers(2, 8)), rng)
            for member in pivot_orbit(g):
                assert member.is_bipartite()
                w = ms_number(member)
                for u, v in member.edges():
                    minor = pivot_minor_delete(member, u, v)
                    assert minor.is_bipartite()
                    assert w == (1 << (member.n - 2)) + 2 * ms_number(minor)

    def test_closed_under_pivot(self):
        orbit = pivot_orbit(make_complete(4))
        assert make_complete(4) in orbit
        for member in orbit:
            for u, v in member.edges():
                assert pivot(member, u, v) in orbit

    def test_cap(self):
        with pytest.raises(CapExceededError):
            pivot_orbit(make_path(5), max_n=4)
