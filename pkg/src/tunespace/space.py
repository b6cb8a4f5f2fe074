"""Indexed, queryable view of a fully resolved search space.

Construction enumerates every valid configuration once, then builds the
lookup structures: a configuration-to-index hash map, per-parameter
sorted unique value lists (over valid configurations only), and an
integer code matrix used for vectorized neighbor queries.  After
construction the space is immutable and every query is read-only.
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import SpaceError, UnknownParameterError
from .solver import Domain, Problem, SolutionSet, solve_all
from .values import INT, REAL, tag_of, value_key

EXPORT_FORMATS = ("rows", "columns", "maps")


class SearchSpace:
    """All valid configurations of a problem, indexed for fast queries."""

    def __init__(
        self,
        parameter_names: Sequence[str],
        configurations: Sequence[tuple],
        cartesian_size: Optional[int] = None,
        declared: Optional[Mapping[str, Domain]] = None,
    ):
        self.parameter_names = tuple(parameter_names)
        self.configurations = list(configurations)
        self.valid_count = len(self.configurations)
        self.cartesian_size = (
            cartesian_size if cartesian_size is not None else self.valid_count
        )
        self.declared = dict(declared) if declared else None
        n = len(self.parameter_names)
        for config in self.configurations:
            if len(config) != n:
                raise SpaceError(
                    f"configuration {config!r} has {len(config)} values, expected {n}"
                )

        # Parameter tags: from declared domains where known, otherwise from
        # the values that actually occur.
        self._tags: dict[str, Optional[str]] = {}
        for j, name in enumerate(self.parameter_names):
            if self.declared and name in self.declared:
                self._tags[name] = self.declared[name].tag
            elif self.configurations:
                self._tags[name] = tag_of(self.configurations[0][j])
            else:
                self._tags[name] = None

        self._index: dict[tuple, int] = dict(
            zip(self.configurations, range(self.valid_count))
        )
        if len(self._index) != self.valid_count:
            raise SpaceError("duplicate configurations in search space")
        self.unique_values: dict[str, tuple] = {}
        self._codes = np.empty((self.valid_count, n), dtype=np.int32)
        self._code_maps: dict[str, dict] = {}
        for j, name in enumerate(self.parameter_names):
            tag = self._tags[name]
            if self.valid_count == 0:
                self.unique_values[name] = ()
                self._code_maps[name] = {}
                continue
            if tag in (INT, REAL):
                dtype = np.int64 if tag == INT else np.float64
                column = np.fromiter(
                    (c[j] for c in self.configurations), dtype=dtype,
                    count=self.valid_count,
                )
                uniq = np.unique(column)
                self._codes[:, j] = np.searchsorted(uniq, column)
                self.unique_values[name] = tuple(uniq.tolist())
            else:
                column = [c[j] for c in self.configurations]
                uniq = sorted(set(column))
                code_of = {v: k for k, v in enumerate(uniq)}
                self._codes[:, j] = [code_of[v] for v in column]
                self.unique_values[name] = tuple(uniq)
            self._code_maps[name] = {
                value_key(v): k for k, v in enumerate(self.unique_values[name])
            }

    # -- basics -------------------------------------------------------------

    def __len__(self):
        return self.valid_count

    def __iter__(self):
        return iter(self.configurations)

    def __eq__(self, other):
        if not isinstance(other, SearchSpace):
            return NotImplemented
        if self.parameter_names != other.parameter_names:
            return False
        if len(self.configurations) != len(other.configurations):
            return False
        for a, b in zip(self.configurations, other.configurations):
            if any(value_key(x) != value_key(y) for x, y in zip(a, b)):
                return False
        return True

    def __repr__(self):
        return (
            f"SearchSpace({self.valid_count} of {self.cartesian_size} "
            f"configurations over {list(self.parameter_names)})"
        )

    def _param_position(self, name: str) -> int:
        try:
            return self.parameter_names.index(name)
        except ValueError:
            raise UnknownParameterError(name) from None

    def _validate_config(self, config, *, declared_membership: bool):
        if not isinstance(config, (tuple, list)) or len(config) != len(self.parameter_names):
            raise SpaceError(
                f"malformed configuration: expected {len(self.parameter_names)} values"
            )
        for name, v in zip(self.parameter_names, config):
            expected = self._tags[name]
            try:
                got = tag_of(v)
            except TypeError:
                raise SpaceError(
                    f"malformed configuration: parameter {name!r} got a "
                    f"non-scalar value {v!r}"
                ) from None
            if expected is not None and got != expected:
                raise SpaceError(
                    f"malformed configuration: parameter {name!r} expects "
                    f"{expected} values, got {got}"
                )
            if declared_membership and self.declared is not None:
                if v not in self.declared[name]:
                    raise SpaceError(
                        f"value {v!r} is not in the declared domain of {name!r}"
                    )
        return tuple(config)

    # -- queries ------------------------------------------------------------

    def bounds(self, parameter: str) -> tuple:
        """(min, max) of a numeric parameter over valid configurations."""
        self._param_position(parameter)
        if self.valid_count == 0:
            raise SpaceError("bounds of an empty search space are undefined")
        tag = self._tags[parameter]
        if tag not in (INT, REAL):
            raise SpaceError(
                f"bounds need a numeric parameter; {parameter!r} holds {tag} values"
            )
        uniq = self.unique_values[parameter]
        return uniq[0], uniq[-1]

    def index_of(self, config) -> Optional[int]:
        """Index of a valid member configuration, or None for a
        well-formed non-member."""
        candidate = self._validate_config(config, declared_membership=False)
        return self._index.get(candidate)

    def neighbors(self, config, method: str = "hamming", distance: int = 1) -> list[tuple]:
        """Valid neighbors of ``config``, ordered by space index.

        ``hamming``: valid configurations differing in >= 1 and <= distance
        positions (``config`` may be any well-formed configuration over the
        declared domains).  ``adjacent-index``: valid configurations whose
        every value sits within one position of ``config``'s value in that
        parameter's sorted unique value list; requires membership.
        """
        if method not in ("hamming", "adjacent-index"):
            raise SpaceError(f"unknown neighbor method {method!r}")
        if self.valid_count == 0:
            return []
        if method == "hamming":
            if distance < 1:
                raise SpaceError("hamming distance must be >= 1")
            candidate = self._validate_config(config, declared_membership=True)
            q = np.array(
                [self._code_maps[name].get(value_key(v), -1)
                 for name, v in zip(self.parameter_names, candidate)],
                dtype=np.int32,
            )
            differs = self._codes != q
            dist = differs.sum(axis=1)
            mask = (dist >= 1) & (dist <= distance)
        else:
            candidate = self._validate_config(config, declared_membership=False)
            if self._index.get(candidate) is None:
                raise SpaceError(
                    "adjacent-index neighbors need a member configuration"
                )
            q = np.array(
                [self._code_maps[name][value_key(v)]
                 for name, v in zip(self.parameter_names, candidate)],
                dtype=np.int32,
            )
            close = np.abs(self._codes - q) <= 1
            differs = self._codes != q
            mask = close.all(axis=1) & differs.any(axis=1)
        return [self.configurations[i] for i in np.nonzero(mask)[0]]

    def sample(self, n: int, seed: int) -> list[tuple]:
        """n distinct configurations drawn uniformly without replacement;
        deterministic for a fixed seed."""
        if n < 0 or n > self.valid_count:
            raise SpaceError(
                f"cannot sample {n} of {self.valid_count} configurations"
            )
        if n == 0:
            return []
        rng = np.random.default_rng(seed)
        chosen = rng.choice(self.valid_count, size=n, replace=False)
        return [self.configurations[i] for i in chosen]

    # -- export / import ----------------------------------------------------

    def export(self, format: str = "rows") -> dict:
        """Serialize to one of the three equivalent payload shapes."""
        if format not in EXPORT_FORMATS:
            raise SpaceError(f"unknown export format {format!r}")
        payload = {
            "format": format,
            "parameters": list(self.parameter_names),
            "cartesian_size": self.cartesian_size,
        }
        if format == "rows":
            payload["configurations"] = [list(c) for c in self.configurations]
        elif format == "columns":
            payload["columns"] = {
                name: [c[j] for c in self.configurations]
                for j, name in enumerate(self.parameter_names)
            }
        else:
            payload["configurations"] = [
                dict(zip(self.parameter_names, c)) for c in self.configurations
            ]
        return payload


def build_search_space(
    problem: Problem,
    *,
    use_preprocessing: bool = True,
    use_partial_checks: bool = True,
) -> SearchSpace:
    """Resolve a problem to its full solution set and index it."""
    solutions = solve_all(
        problem,
        use_preprocessing=use_preprocessing,
        use_partial_checks=use_partial_checks,
    )
    return space_from_solutions(problem, solutions)


def space_from_solutions(problem: Problem, solutions: SolutionSet) -> SearchSpace:
    """Index an already-computed solution set of ``problem``."""
    return SearchSpace(
        solutions.parameter_names,
        solutions.configurations,
        cartesian_size=problem.cartesian_size,
        declared=dict(problem.declared),
    )


def import_space(payload: Mapping) -> SearchSpace:
    """Rebuild a search space from an export payload (any of the three
    formats)."""
    try:
        fmt = payload["format"]
        names = list(payload["parameters"])
    except (KeyError, TypeError) as exc:
        raise SpaceError(f"malformed space payload: missing {exc}") from None
    cartesian = payload.get("cartesian_size")
    try:
        if fmt == "rows":
            configs = [tuple(row) for row in payload["configurations"]]
        elif fmt == "columns":
            columns = payload["columns"]
            lengths = {len(columns[name]) for name in names} or {0}
            if len(lengths) > 1:
                raise SpaceError("column arrays must share one length")
            count = lengths.pop()
            configs = [tuple(columns[name][i] for name in names) for i in range(count)]
        elif fmt == "maps":
            configs = [tuple(record[name] for name in names)
                       for record in payload["configurations"]]
        else:
            raise SpaceError(f"unknown export format {fmt!r}")
    except (KeyError, TypeError) as exc:
        raise SpaceError(f"malformed space payload: {exc}") from None
    return SearchSpace(names, configs, cartesian_size=cartesian)
