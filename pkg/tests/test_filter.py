"""Define the hajos_verify.filter unit tests."""

from testtools import TestCase

from hajos_verify.filter import (
    CRITERIA,
    apply_filter,
    criterion_i,
    criterion_ii,
    criterion_iii,
    criterion_iv,
    criterion_v,
    criterion_vi,
    criterion_vii,
)
from hajos_verify.graph import from_edges
from hajos_verify.graph6 import parse_graph6

from .lib.testbase import GraphZooFixture, SmallGraphsFixture, complete_graph, representatives, slow


def _tally(graphs):
    """Return the first-violation counts for criteria (i) to (vii)."""
    counts = [0] * 7
    for g in graphs:
        verdict = apply_filter(g)
        if verdict.first_violated is not None:
            counts[verdict.first_violated - 1] += 1
    return tuple(counts)


class TestFilter(TestCase):  # pylint: disable=too-few-public-methods
    """Serve as a Base class for all tests of the filter module."""

    def setUp(self):  # pylint: disable=invalid-name
        """Initialize the class."""
        # Call the inherited setUp method
        super().setUp()

        self.zoo = self.useFixture(GraphZooFixture())

        # v = 0 joined to the clique {1, 2, 3, 4} and to 5, 6, which are only linked through 7
        self.clique_witness = from_edges(
            8,
            [(0, w) for w in range(1, 7)] + [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]
            + [(5, 7), (7, 6)],
        )

        # u = 0 and v = 1 share {2, 3, 4, 5} with the edge 2-3 inside; 6 and 7 are their private neighbours
        common_edges = [(w, x) for w in (0, 1) for x in (2, 3, 4, 5)]
        self.path_witness = from_edges(
            9, [(0, 1)] + common_edges + [(2, 3), (0, 6), (1, 7), (6, 7), (2, 8), (3, 8)],
        )


class TestCriteria(TestFilter):
    """Test the seven criteria one at a time."""

    def test_criterion_i(self):
        """Allow at most one vertex of degree 2 or 4."""
        self.assertFalse(criterion_i(self.zoo.c6))
        self.assertFalse(criterion_i(self.zoo.k5))
        self.assertTrue(criterion_i(self.zoo.k7))

    def test_criterion_ii(self):
        """Require adjacent neighbours around degree-2 vertices."""
        self.assertFalse(criterion_ii(self.zoo.c4))
        self.assertTrue(criterion_ii(self.zoo.k3))
        self.assertTrue(criterion_ii(self.zoo.k7))

    def test_criterion_iii(self):
        """Require a regular neighbourhood around degree-4 vertices."""
        self.assertTrue(criterion_iii(self.zoo.k5))
        self.assertFalse(criterion_iii(self.zoo.book))
        self.assertTrue(criterion_iii(self.zoo.c6))

    def test_criterion_iv(self):
        """Require the leftover neighbours of a 4-clique to be adjacent."""
        self.assertTrue(criterion_iv(self.zoo.k7))
        self.assertTrue(criterion_iv(self.zoo.c6))
        self.assertEqual(self.clique_witness.degree(0), 6)
        self.assertFalse(criterion_iv(self.clique_witness))

    def test_criterion_v(self):
        """Require an independent common neighbourhood of five."""
        self.assertFalse(criterion_v(self.zoo.k7))
        self.assertTrue(criterion_v(self.zoo.c6))
        self.assertTrue(criterion_v(self.path_witness))

    def test_criterion_vi(self):
        """Forbid outside vertices seeing three common neighbours."""
        self.assertFalse(criterion_vi(self.zoo.k7))
        self.assertTrue(criterion_vi(self.zoo.c6))
        self.assertTrue(criterion_vi(self.zoo.octahedron))

    def test_criterion_vii(self):
        """Require an independent common neighbourhood of four when the private neighbours are linked."""
        self.assertTrue(criterion_vii(self.zoo.c6))
        self.assertTrue(criterion_vii(self.zoo.k7))
        self.assertEqual((self.path_witness.degree(0), self.path_witness.degree(1)), (6, 6))
        self.assertFalse(criterion_vii(self.path_witness))

    def test_criterion_vii_without_path(self):
        """Hold when the private neighbours are only linked through the common neighbourhood."""
        edges = [e for e in self.path_witness.edges() if e != (6, 7)] + [(6, 4), (7, 4)]
        self.assertTrue(criterion_vii(from_edges(9, edges)))

    def test_criterion_vii_independent(self):
        """Hold when the common neighbourhood is independent."""
        edges = [e for e in self.path_witness.edges() if e != (2, 3)]
        self.assertTrue(criterion_vii(from_edges(9, edges)))

    def test_four_regular_vacuity(self):
        """Hold (iv) to (vii) vacuously on 4-regular graphs."""
        for g in (self.zoo.octahedron, self.zoo.k5):
            for criterion in CRITERIA[3:]:
                self.assertTrue(criterion(g))


class TestApplyFilter(TestFilter):
    """Test the apply_filter function."""

    def test_cycle(self):
        """Attribute C_6 to criterion (i)."""
        verdict = apply_filter(self.zoo.c6)
        self.assertFalse(verdict.passed)
        self.assertEqual(verdict.first_violated, 1)
        self.assertEqual(verdict.label, "i")

    def test_k7(self):
        """Pass (i) to (iv) on K_7 and attribute it to (v)."""
        verdict = apply_filter(complete_graph(7))
        self.assertEqual(verdict.per_criterion[:4], (True, True, True, True))
        self.assertEqual(verdict.first_violated, 5)
        self.assertEqual(verdict.label, "v")

    def test_bowtie(self):
        """Mark the bowtie as not biconnected."""
        verdict = apply_filter(self.zoo.bowtie)
        self.assertFalse(verdict.passed)
        self.assertFalse(verdict.biconnected)
        self.assertIsNone(verdict.first_violated)
        self.assertEqual(verdict.label, "not_biconnected")

    def test_attribution_partition(self):
        """Give every graph of a stream exactly one attribution."""
        small = self.useFixture(SmallGraphsFixture())
        graphs = small.upto(7) + [self.zoo.bowtie, self.zoo.c6]
        labels = [apply_filter(g).label for g in graphs]
        self.assertEqual(len(labels), len(graphs))
        self.assertEqual(labels.count("not_biconnected"), 1)

    def test_order_7_tallies(self):
        """Attribute 29 order-7 graphs to (i) and one to (v)."""
        self.assertEqual(_tally(representatives(7)), (29, 0, 0, 0, 1, 0, 0))

    def test_small_orders_all_filtered(self):
        """Filter every generated graph up to order 7."""
        small = self.useFixture(SmallGraphsFixture())
        self.assertFalse(any(apply_filter(g).passed for g in small.upto(7)))

    def test_order_9_survivor(self):
        """Pass K_{3,3,3} through every criterion."""
        parts = ((0, 1, 2), (3, 4, 5), (6, 7, 8))
        expected = from_edges(9, [(a, b) for p, q in ((0, 1), (0, 2), (1, 2)) for a in parts[p] for b in parts[q]])
        self.assertEqual(self.zoo.k333.to_graph6(), expected.to_graph6())
        verdict = apply_filter(self.zoo.k333)
        self.assertTrue(verdict.passed)
        self.assertEqual(verdict.label, "passed")
        self.assertEqual(verdict.per_criterion, (True,) * 7)

    def test_order_8_common_clique(self):
        """Attribute GJ~v~w, which fails (v) to (vii), to (v)."""
        g = parse_graph6("GJ~v~w")
        self.assertEqual([row.bit_count() for row in g.adj], [4, 6, 6, 6, 6, 6, 6, 6])
        self.assertTrue(g.has_edge(3, 4))
        self.assertEqual(g.adj[1] & g.adj[2], 0b11111000)
        verdict = apply_filter(g)
        self.assertEqual(verdict.per_criterion, (True, True, True, True, False, False, False))
        self.assertEqual(verdict.first_violated, 5)
        self.assertEqual(verdict.label, "v")

    @slow
    def test_order_8_tallies(self):
        """Attribute the 162 order-8 graphs as 159, 1, 0, 0, 1, 0, 1."""
        graphs = representatives(8)
        self.assertEqual(len(graphs), 162)
        self.assertEqual(_tally(graphs), (159, 1, 0, 0, 1, 0, 1))
        self.assertIn("GJ~v~w", [g.to_graph6() for g in graphs if apply_filter(g).first_violated == 5])
