"""Define the hajos_verify.heuristics unit tests."""

from unittest import mock

from testtools import TestCase

from hajos_verify._helpers import HeuristicError, PreconditionError
from hajos_verify.graph import Decomposition, from_edges, validate_cycle, validate_decomposition
from hajos_verify.heuristics import (
    STRATEGY_ORDER,
    RngStream,
    Strategy,
    cycle_strategy,
    decompose,
    hdf_cycle,
    long_walk,
    longest_distance_cycle,
    random_cycle,
    random_long_cycle,
    rlc_repeat,
)

from .lib.testbase import GraphZooFixture, SmallGraphsFixture, slow


class TestHeuristics(TestCase):  # pylint: disable=too-few-public-methods
    """Serve as a Base class for all tests of the heuristics module."""

    def setUp(self):  # pylint: disable=invalid-name
        """Initialize the class."""
        # Call the inherited setUp method
        super().setUp()

        self.zoo = self.useFixture(GraphZooFixture())
        self.rng = RngStream(42)


class TestRngStream(TestHeuristics):
    """Test the RngStream class."""

    def test_reproducible(self):
        """Produce the same draws from the same seed."""
        first, second = RngStream(7), RngStream(7)
        self.assertEqual([first.randrange(1000) for _ in range(20)], [second.randrange(1000) for _ in range(20)])

    def test_derive(self):
        """Key derived streams by the master seed and the extra keys."""
        draws = [RngStream.derive(1, b"Bw", k).randrange(1 << 30) for k in range(3)]
        self.assertEqual(draws, [RngStream.derive(1, b"Bw", k).randrange(1 << 30) for k in range(3)])
        self.assertEqual(len(set(draws)), 3)

    def test_choice(self):
        """Draw members of the sequence."""
        items = ["a", "b", "c"]
        for _ in range(20):
            self.assertIn(self.rng.choice(items), items)


class TestCycleFinders(TestHeuristics):
    """Test the single-cycle strategies."""

    def test_random_cycle_triangle(self):
        """Return the triangle itself on K_3."""
        cycle = random_cycle(self.zoo.k3, self.rng)
        self.assertEqual(sorted(cycle), [0, 1, 2])

    def test_random_cycle_c6(self):
        """Return all six vertices on C_6."""
        self.assertEqual(len(random_cycle(self.zoo.c6, self.rng)), 6)

    def test_random_cycle_k5(self):
        """Return a valid cycle of K_5 for many seeds."""
        for seed in range(50):
            self.assertTrue(validate_cycle(self.zoo.k5, random_cycle(self.zoo.k5, RngStream(seed))))

    def test_random_cycle_stranded(self):
        """Raise HeuristicError when the walk reaches a vertex of degree 1."""
        self.assertRaises(HeuristicError, random_cycle, self.zoo.path, self.rng, 0)

    def test_edgeless(self):
        """Reject graphs without edges."""
        self.assertRaises(PreconditionError, random_cycle, self.zoo.single, self.rng)

    def test_isolated_start(self):
        """Reject an isolated start vertex."""
        g = from_edges(4, [(0, 1), (1, 2), (0, 2)])
        self.assertRaises(PreconditionError, random_cycle, g, self.rng, 3)
        self.assertTrue(validate_cycle(g, random_cycle(g, self.rng, 2)))

    def test_long_walk_dominance(self):
        """Return a cycle at least as long as every cycle closed along the walk."""
        for g in (self.zoo.k5, self.zoo.k7, self.zoo.octahedron, self.zoo.book):
            for seed in range(30):
                cycle, recorded = long_walk(g, RngStream(seed))
                self.assertTrue(validate_cycle(g, cycle))
                self.assertEqual(len(cycle), max(recorded))

    def test_random_long_cycle(self):
        """Return the full cycle on C_6 and a valid one on K_7."""
        self.assertEqual(len(random_long_cycle(self.zoo.c6, self.rng)), 6)
        self.assertTrue(validate_cycle(self.zoo.k7, random_long_cycle(self.zoo.k7, self.rng)))

    def test_longest_distance_c6(self):
        """Use all six vertices of C_6, with or without an explicit pair."""
        self.assertEqual(len(longest_distance_cycle(self.zoo.c6, self.rng)), 6)
        cycle = longest_distance_cycle(self.zoo.c6, self.rng, pair=(0, 3))
        self.assertEqual(sorted(cycle), list(range(6)))

    def test_longest_distance_k5(self):
        """Return a valid cycle on K_5."""
        self.assertTrue(validate_cycle(self.zoo.k5, longest_distance_cycle(self.zoo.k5, self.rng)))

    def test_longest_distance_no_paths(self):
        """Raise HeuristicError across a cut vertex."""
        self.assertRaises(HeuristicError, longest_distance_cycle, self.zoo.bowtie, self.rng, (1, 3))

    def test_longest_distance_same_vertex(self):
        """Reject a pair made of one vertex."""
        self.assertRaises(PreconditionError, longest_distance_cycle, self.zoo.c6, self.rng, (2, 2))

    def test_hdf_two_leaders(self):
        """Pass through both maximum-degree vertices of the book graph."""
        for seed in range(20):
            cycle = hdf_cycle(self.zoo.book, RngStream(seed))
            self.assertTrue(validate_cycle(self.zoo.book, cycle))
            self.assertTrue({0, 1} <= set(cycle))

    def test_hdf_one_leader(self):
        """Start from the single maximum-degree vertex of the bowtie."""
        cycle = hdf_cycle(self.zoo.bowtie, self.rng)
        self.assertIn(0, set(cycle))

    def test_cycle_strategy(self):
        """Look strategies up by enum member or by name."""
        self.assertIs(cycle_strategy(Strategy.RC), random_cycle)
        self.assertIs(cycle_strategy("hdf"), hdf_cycle)
        self.assertRaises(ValueError, cycle_strategy, "bogus")


class TestDecompose(TestHeuristics):
    """Test the decompose and rlc_repeat functions."""

    def test_triangle(self):
        """Use one cycle on K_3."""
        for strategy in STRATEGY_ORDER:
            outcome = decompose(self.zoo.k3, strategy, self.rng)
            self.assertEqual(outcome.cycles_used, 1)
            self.assertTrue(outcome.within_bound)
            self.assertIs(outcome.strategy, strategy)

    def test_c6(self):
        """Use one cycle on C_6."""
        for strategy in STRATEGY_ORDER:
            self.assertEqual(decompose(self.zoo.c6, strategy, self.rng).cycles_used, 1)

    def test_k5(self):
        """Produce a valid decomposition of K_5 whose bound flag matches its size."""
        for strategy in STRATEGY_ORDER:
            for seed in range(20):
                outcome = decompose(self.zoo.k5, strategy, RngStream(seed))
                self.assertIsNone(validate_decomposition(self.zoo.k5, outcome.decomposition))
                self.assertEqual(outcome.within_bound, outcome.cycles_used <= 2)

    def test_bowtie(self):
        """Split the bowtie into its two triangles."""
        outcome = decompose(self.zoo.bowtie, Strategy.LD, self.rng)
        self.assertEqual(outcome.cycles_used, 2)
        self.assertIsNone(validate_decomposition(self.zoo.bowtie, outcome.decomposition))

    def test_deterministic(self):
        """Return the same decomposition for the same seed."""
        for strategy in STRATEGY_ORDER:
            first = decompose(self.zoo.k7, strategy, RngStream(9))
            second = decompose(self.zoo.k7, strategy, RngStream(9))
            self.assertEqual(first, second)

    def test_small_graphs(self):
        """Decompose every generated graph up to order 7 validly for a few seeds."""
        small = self.useFixture(SmallGraphsFixture())
        for g in small.upto(7):
            for strategy in STRATEGY_ORDER:
                for seed in range(5):
                    outcome = decompose(g, strategy, RngStream(seed))
                    self.assertIsNone(validate_decomposition(g, outcome.decomposition))

    @slow
    def test_small_graphs_many_seeds(self):
        """Decompose every generated graph up to order 7 validly for 100 seeds."""
        small = self.useFixture(SmallGraphsFixture())
        for g in small.upto(7):
            for strategy in STRATEGY_ORDER:
                for seed in range(100):
                    outcome = decompose(g, strategy, RngStream(seed))
                    self.assertIsNone(validate_decomposition(g, outcome.decomposition))

    def test_rlc_repeat_cycle(self):
        """Succeed on the first attempt on C_6."""
        found = rlc_repeat(self.zoo.c6, self.rng, max_attempts=1)
        self.assertIsInstance(found, Decomposition)
        self.assertEqual(len(found), 1)

    def test_rlc_repeat_k5(self):
        """Find a two-cycle decomposition of K_5."""
        found = rlc_repeat(self.zoo.k5, self.rng, max_attempts=1000)
        self.assertIsNotNone(found)
        self.assertEqual(len(found), 2)
        self.assertIsNone(validate_decomposition(self.zoo.k5, found))

    def test_rlc_repeat_cancelled(self):
        """Return None without trying when the cancel token is already set."""
        cancel = mock.Mock()
        cancel.is_set.return_value = True

        with mock.patch("hajos_verify.heuristics.decompose") as mock_decompose:
            self.assertIsNone(rlc_repeat(self.zoo.k5, self.rng, cancel=cancel))
        mock_decompose.assert_not_called()

    def test_rlc_repeat_gives_up(self):
        """Return None once the attempts run out."""
        miss = mock.Mock(within_bound=False)
        with mock.patch("hajos_verify.heuristics.decompose", return_value=miss) as mock_decompose:
            self.assertIsNone(rlc_repeat(self.zoo.k5, self.rng, max_attempts=3))
        self.assertEqual(mock_decompose.call_count, 3)
