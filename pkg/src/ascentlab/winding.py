"""Recursive winding landscapes on 2n bits.

The landscape is built level by level: level k adds the variable pair
(x_{2k-1}, x_{2k}) on top of the level-(k-1) landscape, with a fittest step
s+_k, a barrier step s-_k, and sub-cube optimum 0^(2(k-1))11.  Steepest
ascent from the all-zero state winds through every sub-cube peak and takes
exactly 2^(n+1) - 2 steps.

This is deliberately a black-box fitness function, not a VCSP: expressing it
with bounded-arity soft constraints is impossible with a sparse constraint
graph (the gradient analysis in :mod:`ascentlab.analysis` measures exactly
that), so there is no table form to generate.

States are bit tuples with x_1 first; the sub-cube of the first 2k variables
is the prefix of length 2k.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .landscapes import Landscape


class WindingError(ValueError):
    """Invalid schedule or state."""


@dataclass(frozen=True)
class StepSchedule:
    """Fittest steps s+_1..s+_n and barrier steps s-_1..s-_n.

    Validity: s+_k > 0, s+_k strictly increasing, s-_k < s+_k, and
    s+_k > s-_(k+1).
    """

    s_plus: tuple[int, ...]
    s_minus: tuple[int, ...]

    def __post_init__(self):
        if len(self.s_plus) != len(self.s_minus) or not self.s_plus:
            raise WindingError("schedule needs equal-length, non-empty step sequences")
        n = len(self.s_plus)
        for k in range(n):
            if not isinstance(self.s_plus[k], int) or not isinstance(self.s_minus[k], int):
                raise WindingError("steps must be exact integers")
            if self.s_plus[k] <= 0:
                raise WindingError(f"s+_{k + 1} must be positive")
            if self.s_minus[k] >= self.s_plus[k]:
                raise WindingError(f"need s-_{k + 1} < s+_{k + 1}")
        for k in range(n - 1):
            if self.s_plus[k] >= self.s_plus[k + 1]:
                raise WindingError("fittest steps must be strictly increasing")
            if self.s_plus[k] <= self.s_minus[k + 1]:
                raise WindingError(f"need s+_{k + 1} > s-_{k + 2}")

    @property
    def n(self) -> int:
        return len(self.s_plus)

    @classmethod
    def semismooth(cls, n: int) -> "StepSchedule":
        """Smallest all-integer schedule with positive barrier steps
        (s+_k = k + 1, s-_k = 1): no reciprocal sign epistasis, short ascents
        to the peak exist everywhere, yet steepest ascent stays on the long
        path."""
        return cls(tuple(k + 1 for k in range(1, n + 1)), (1,) * n)

    @classmethod
    def root2path(cls, n: int) -> "StepSchedule":
        """Zero barrier steps (s+_k = k, s-_k = 0): the long path is the only
        strictly improving path from the origin."""
        return cls(tuple(range(1, n + 1)), (0,) * n)


SCHEDULE_PRESETS = {
    "semismooth": StepSchedule.semismooth,
    "root2path": StepSchedule.root2path,
}


class WindingLandscape(Landscape):
    def __init__(self, n: int, schedule: StepSchedule | None = None):
        if n < 1:
            raise WindingError("need n >= 1")
        if schedule is None:
            schedule = StepSchedule.semismooth(n)
        if schedule.n != n:
            raise WindingError(f"schedule has {schedule.n} levels, landscape needs {n}")
        self.n = n
        self.schedule = schedule
        self.num_variables = 2 * n
        # peak_value[k] = value of the level-k sub-cube optimum 0^(2(k-1))11
        pv = [0]
        for k in range(1, n + 1):
            pv.append(2 * pv[k - 1] + 2 * schedule.s_plus[k - 1])
        self.peak_value = tuple(pv)
        # single-slot memo for the engine's repeated delta(state, .) calls;
        # one atomic reference keeps concurrent readers consistent
        self._memo: tuple | None = None

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, state) -> int:
        if len(state) % 2 != 0:
            raise WindingError("winding states have even length")
        if len(state) != 2 * self.n:
            raise WindingError(f"state has {len(state)} bits, expected {2 * self.n}")
        memo = self._memo
        if memo is not None and memo[0] == state:
            return memo[1]
        value = self._evaluate(state)
        self._memo = (state, value)
        return value

    def _evaluate(self, state, flip: int = -1) -> int:
        """Value of ``state``, optionally with bit ``flip`` inverted.

        Iterative form of the level recursion.  The only mutation the
        recursion ever performs is XOR-ing the current prefix with the peak
        of the level below, which flips exactly the next pair to be read, so
        a two-flag pending flip replaces a working copy of the state.
        """
        s_plus = self.schedule.s_plus
        s_minus = self.schedule.s_minus
        peak_value = self.peak_value
        ones = sum(state)
        if flip >= 0:
            ones += 1 - 2 * state[flip]
        total = 0
        fa = fb = 0
        for k in range(self.n, 0, -1):
            i2 = 2 * k - 2
            a = state[i2] ^ fa
            b = state[i2 + 1] ^ fb
            if flip == i2:
                a ^= 1
            elif flip == i2 + 1:
                b ^= 1
            ones -= a + b  # ones in the (virtual) prefix of length 2(k-1)
            fa = fb = 0
            if a == b:
                if a == 0:
                    continue
                total += peak_value[k - 1] + 2 * s_plus[k - 1]
                if k >= 2:
                    # XOR the prefix with the level-(k-1) peak: flip its top pair
                    fa = fb = 1
                    va = state[i2 - 2] ^ (1 if flip == i2 - 2 else 0)
                    vb = state[i2 - 1] ^ (1 if flip == i2 - 1 else 0)
                    ones += 2 - 2 * (va + vb)
                continue
            # a != b: outcome depends on whether the prefix is its own peak
            if k == 1:
                at_peak = True
            else:
                va = state[i2 - 2] ^ (1 if flip == i2 - 2 else 0)
                vb = state[i2 - 1] ^ (1 if flip == i2 - 1 else 0)
                at_peak = ones == 2 and va == 1 and vb == 1
            if at_peak:
                step = s_plus[k - 1] if a == 1 else s_minus[k - 1]
                return total + peak_value[k - 1] + step
            total += s_minus[k - 1]
        return total

    def delta(self, state, move) -> int:
        var, value = move
        if state[var] == value:
            return 0
        return self._evaluate(state, flip=var) - self.evaluate(state)

    # -- moves / enumeration ------------------------------------------------

    def moves(self, state):
        for i, b in enumerate(state):
            yield (i, 1 - b)

    def iter_states(self):
        return itertools.product((0, 1), repeat=2 * self.n)

    def state_count(self) -> int:
        return 4 ** self.n

    def is_boolean(self) -> bool:
        return True

    # -- named states and closed-form gradients ------------------------------

    def origin(self) -> tuple[int, ...]:
        return (0,) * (2 * self.n)

    def peak_state(self, k: int) -> tuple[int, ...]:
        """The level-k sub-cube optimum embedded in 2n bits:
        0^(2(k-1)) 11 0^(2(n-k))."""
        if not 1 <= k <= self.n:
            raise WindingError(f"k must be in 1..{self.n}")
        bits = [0] * (2 * self.n)
        bits[2 * k - 2] = 1
        bits[2 * k - 1] = 1
        return tuple(bits)

    def origin_gradient_expected(self) -> tuple[int, ...]:
        """Gradient at the all-zero state:
        [s+_1, s-_1, s-_2, s-_2, ..., s-_n, s-_n]."""
        out = [self.schedule.s_plus[0], self.schedule.s_minus[0]]
        for i in range(2, self.n + 1):
            out.extend([self.schedule.s_minus[i - 1]] * 2)
        return tuple(out)

    def peak_gradient_expected(self, k: int) -> tuple[int, ...]:
        """Gradient at the embedded level-k peak, entry-wise.

        With P_i the level-i peak value, the entries at variables
        (2i-1, 2i) are:

          i <= k:  magnitude P_i - s-_i at both, except that the even entry
                   of level 1 uses s+_1 instead of s-_1 (the prefix under
                   pair 1 is empty, so clearing bit 2 lands in the
                   fittest-step case rather than in a barrier case);
                   the sign is + at i == k and - below it
          i == k+1: s+_(k+1), s-_(k+1)
          i > k+1:  s-_i, s-_i

        At level 1 the i <= k case reduces to s-_1 - 2 s+_1 and -s+_1
        (since P_1 = 2 s+_1), which is the only level where the magnitude
        can be written without P_i; direct evaluation of the level recursion
        fixes the magnitude at P_i - s-_i for every deeper level.  The
        degree-bound argument only needs the odd entries to change between
        origin and peak, and they change by -P_i != 0.
        """
        if not 1 <= k <= self.n:
            raise WindingError(f"k must be in 1..{self.n}")
        sp, sm = self.schedule.s_plus, self.schedule.s_minus
        out = []
        for i in range(1, self.n + 1):
            if i <= k:
                pi = self.peak_value[i]
                odd = pi - sm[i - 1]
                even = pi - (sp[0] if i == 1 else sm[i - 1])
                if i < k:
                    odd, even = -odd, -even
                out.extend([odd, even])
            elif i == k + 1:
                out.extend([sp[i - 1], sm[i - 1]])
            else:
                out.extend([sm[i - 1], sm[i - 1]])
        return tuple(out)


def winding_fitness(landscape: WindingLandscape, state) -> int:
    return landscape.evaluate(state)


# ---------------------------------------------------------------------------
# Serialization: a winding landscape is just {n, s_plus, s_minus}.
# ---------------------------------------------------------------------------

WINDING_FORMAT = "winding-landscape/v1"


def winding_to_obj(landscape: WindingLandscape) -> dict:
    return {
        "format": WINDING_FORMAT,
        "n": landscape.n,
        "s_plus": list(landscape.schedule.s_plus),
        "s_minus": list(landscape.schedule.s_minus),
    }


def winding_from_obj(obj: dict) -> WindingLandscape:
    if obj.get("format") != WINDING_FORMAT:
        raise WindingError(f"not a {WINDING_FORMAT} document")
    schedule = StepSchedule(
        tuple(int(x) for x in obj["s_plus"]),
        tuple(int(x) for x in obj["s_minus"]),
    )
    return WindingLandscape(int(obj["n"]), schedule)


def dump_winding(landscape: WindingLandscape, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(winding_to_obj(landscape), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_winding(path) -> WindingLandscape:
    with open(path, "r", encoding="utf-8") as fh:
        return winding_from_obj(json.load(fh))
