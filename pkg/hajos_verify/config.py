"""Define the hajos_verify.config.Config class."""

import logging
import os

import toml

from .heuristics import DEFAULT_MAX_ATTEMPTS

LOGGER = logging.getLogger(__name__)

SEED_ENV = "HAJOS_SEED"
TOML_TABLE = "hajos_verify"


class Config:  # pylint: disable=too-many-instance-attributes
    """Hold the run options shared by the verification pipeline and the command line."""

    OPTIONS = [
        "seed",
        "timeout_ms",
        "race",
        "emit_lp_dir",
        "halt_on_counterexample",
        "fail_fast",
        "max_rlc_attempts",
        "node_limit",
        "filter_only",
        "jobs",
    ]

    def __init__(self, **kwargs):
        """Initialize the class.

        :param int seed: The master seed; the default is $HAJOS_SEED, or 0 if that is unset
        :param int timeout_ms: The wall budget per graph, from the filter through the race; the default is 60000
        :param bool race: Race the exact search against repeated RLC if True; the default is True
        :param str emit_lp_dir: Write an LP model for every graph reaching the race into this directory
        :param bool halt_on_counterexample: Stop a stream at the first counterexample; the default is False
        :param bool fail_fast: Stop a stream at the first malformed line; the default is False
        :param int max_rlc_attempts: The cap on repeated RLC decompositions; the default is 10000
        :param int node_limit: An optional cap on exact search nodes per graph
        :param bool filter_only: Stop after the filter stage; the default is False
        :param int jobs: The number of worker processes for streams and enumeration; the default is 1
        """
        unknown = set(kwargs) - set(self.OPTIONS)
        if unknown:
            raise KeyError(f"Unknown configuration options: {', '.join(sorted(unknown))}")

        # Using get for consistency and to allow defaults to be easily set
        seed = kwargs.get("seed")
        if seed is None:
            seed = os.environ.get(SEED_ENV, 0)
        self.__seed = int(seed)
        if self.__seed < 0:
            raise ValueError(f"Seed must be non-negative, not {self.__seed}")

        self.__timeout_ms = int(kwargs.get("timeout_ms", 60000))
        self.__race = bool(kwargs.get("race", True))
        self.__emit_lp_dir = kwargs.get("emit_lp_dir")
        self.__halt_on_counterexample = bool(kwargs.get("halt_on_counterexample", False))
        self.__fail_fast = bool(kwargs.get("fail_fast", False))
        self.__max_rlc_attempts = int(kwargs.get("max_rlc_attempts", DEFAULT_MAX_ATTEMPTS))
        self.__node_limit = kwargs.get("node_limit")
        self.__filter_only = bool(kwargs.get("filter_only", False))
        self.__jobs = max(1, int(kwargs.get("jobs", 1)))

    @classmethod
    def from_toml(cls, path, **overrides):
        """Load options from the [hajos_verify] table of a TOML file.

        Overrides that are not None win over file values, and file values win over defaults.

        :param str path: The path to the TOML file
        :return Config: The configuration
        """
        data = toml.load(path)
        options = dict(data.get(TOML_TABLE, {}))
        options.update({key: value for key, value in overrides.items() if value is not None})
        LOGGER.debug("Loaded configuration from %s: %s", path, sorted(options))
        return cls(**options)

    def replace(self, **changes):
        """Return a copy with some options changed."""
        options = self.to_dict()
        options.update(changes)
        return Config(**options)

    def to_dict(self):
        """Return all options as a dictionary."""
        return {option: getattr(self, option) for option in self.OPTIONS}

    @property
    def seed(self):
        """Return the internal __seed value."""
        return self.__seed

    @property
    def timeout_ms(self):
        """Return the internal __timeout_ms value."""
        return self.__timeout_ms

    @property
    def timeout(self):
        """Return the race budget in seconds."""
        return self.__timeout_ms / 1000.0

    @property
    def race(self):
        """Return the internal __race value."""
        return self.__race

    @property
    def emit_lp_dir(self):
        """Return the internal __emit_lp_dir value."""
        return self.__emit_lp_dir

    @property
    def halt_on_counterexample(self):
        """Return the internal __halt_on_counterexample value."""
        return self.__halt_on_counterexample

    @property
    def fail_fast(self):
        """Return the internal __fail_fast value."""
        return self.__fail_fast

    @property
    def max_rlc_attempts(self):
        """Return the internal __max_rlc_attempts value."""
        return self.__max_rlc_attempts

    @property
    def node_limit(self):
        """Return the internal __node_limit value."""
        return self.__node_limit

    @property
    def filter_only(self):
        """Return the internal __filter_only value."""
        return self.__filter_only

    @property
    def jobs(self):
        """Return the internal __jobs value."""
        return self.__jobs
