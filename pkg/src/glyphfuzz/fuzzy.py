"""Mamdani fuzzy inference.

Piecewise-linear membership functions, min-AND rule firing, clip (min)
implication, pointwise max aggregation, and centroid defuzzification over
a uniform sample grid of the output range.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import EmptyAntecedent, NoRuleFired, UnknownTerm, UnknownVariable


@dataclass(frozen=True)
class MembershipFunction:
    """Trapezoid over breakpoints a <= b <= c <= d; b == c makes a triangle.

    The degree is 0 outside [a, d], 1 on [b, c], and linear on the ramps.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not self.a <= self.b <= self.c <= self.d:
            raise ValueError(f"breakpoints must be ordered, got {self}")

    def degree(self, x: float) -> float:
        if x < self.a or x > self.d:
            return 0.0
        if self.b <= x <= self.c:
            return 1.0
        if x < self.b:
            return (x - self.a) / (self.b - self.a)
        return (self.d - x) / (self.d - self.c)

    def degrees(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized degree over a sample grid."""
        out = np.zeros(xs.shape, dtype=float)
        if self.b > self.a:
            m = (xs >= self.a) & (xs < self.b)
            out[m] = (xs[m] - self.a) / (self.b - self.a)
        out[(xs >= self.b) & (xs <= self.c)] = 1.0
        if self.d > self.c:
            m = (xs > self.c) & (xs <= self.d)
            out[m] = (self.d - xs[m]) / (self.d - self.c)
        return out


def triangle(a: float, peak: float, d: float) -> MembershipFunction:
    return MembershipFunction(a, peak, peak, d)


def trapezoid(a: float, b: float, c: float, d: float) -> MembershipFunction:
    return MembershipFunction(a, b, c, d)


@dataclass(frozen=True)
class LinguisticVariable:
    """Named variable over [lo, hi] with ordered, uniquely labeled terms.

    Term supports must leave no gap of positive length inside the range;
    isolated zero-degree points (adjacent triangle feet) are tolerated.
    """

    name: str
    lo: float
    hi: float
    terms: tuple[tuple[str, MembershipFunction], ...]

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"variable {self.name!r} needs lo < hi")
        if not self.terms:
            raise ValueError(f"variable {self.name!r} has no terms")
        object.__setattr__(self, "terms", tuple((str(l), mf) for l, mf in self.terms))
        labels = [label for label, _ in self.terms]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate term labels in variable {self.name!r}")
        self._check_coverage()

    def _check_coverage(self):
        # Between consecutive breakpoints the max degree is piecewise linear,
        # so a gap of positive length always shows up at a midpoint.
        points = {self.lo, self.hi}
        for _, mf in self.terms:
            for p in (mf.a, mf.b, mf.c, mf.d):
                if self.lo <= p <= self.hi:
                    points.add(p)
        ordered = sorted(points)
        mids = [(p + q) / 2.0 for p, q in zip(ordered, ordered[1:])]
        for x in mids:
            if max(mf.degree(x) for _, mf in self.terms) <= 0.0:
                raise ValueError(
                    f"variable {self.name!r} has an uncovered gap around {x}"
                )

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.terms)

    def term(self, label: str) -> MembershipFunction:
        for term_label, mf in self.terms:
            if term_label == label:
                return mf
        raise UnknownTerm(f"variable {self.name!r} has no term {label!r}")

    def clamp(self, x: float) -> float:
        return min(max(float(x), self.lo), self.hi)

    def best_term(self, x: float) -> str:
        """Label of the term with the highest degree at x; ties go to the
        earliest declared term. Out-of-range x is clamped first."""
        x = self.clamp(x)
        best_label, best_degree = self.terms[0][0], self.terms[0][1].degree(x)
        for label, mf in self.terms[1:]:
            d = mf.degree(x)
            if d > best_degree:
                best_label, best_degree = label, d
        return best_label


@dataclass(frozen=True)
class Rule:
    """Conjunction of (variable -> term) conditions implying one output term.

    Variables absent from the antecedent are don't-care.
    """

    antecedent: tuple[tuple[str, str], ...]
    consequent: str

    def __post_init__(self):
        object.__setattr__(
            self, "antecedent", tuple((str(v), str(t)) for v, t in dict(self.antecedent).items())
        )

    @classmethod
    def of(cls, antecedent: Mapping[str, str], consequent: str) -> "Rule":
        return cls(tuple(antecedent.items()), consequent)


@dataclass(frozen=True)
class InferenceOutcome:
    crisp: float
    rule_strengths: tuple[float, ...]
    max_strength: float


@dataclass(frozen=True)
class FisDefinition:
    """A complete Mamdani system: input variables, output variable, rules."""

    inputs: tuple[LinguisticVariable, ...]
    output: LinguisticVariable
    rules: tuple[Rule, ...] = ()
    defuzz_samples: int = 1001

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.defuzz_samples < 2:
            raise ValueError("defuzz_samples must be >= 2")
        names = [v.name for v in self.inputs]
        if len(set(names)) != len(names):
            raise ValueError("input variable names must be unique")
        for rule in self.rules:
            self._check_rule(rule)

    def _check_rule(self, rule: Rule):
        if not rule.antecedent:
            raise EmptyAntecedent("rule antecedent is empty")
        by_name = {v.name: v for v in self.inputs}
        for var_name, term_label in rule.antecedent:
            var = by_name.get(var_name)
            if var is None:
                raise UnknownVariable(f"rule references unknown input {var_name!r}")
            var.term(term_label)  # raises UnknownTerm
        self.output.term(rule.consequent)

    def input_variable(self, name: str) -> LinguisticVariable:
        for var in self.inputs:
            if var.name == name:
                return var
        raise UnknownVariable(f"no input variable named {name!r}")

    def with_rules(self, rules: Sequence[Rule]) -> "FisDefinition":
        return FisDefinition(self.inputs, self.output, tuple(rules), self.defuzz_samples)

    def fire_strength(self, rule: Rule, inputs: Mapping[str, float]) -> float:
        """Min over the antecedent of term degrees at the crisp inputs."""
        if not rule.antecedent:
            raise EmptyAntecedent("rule antecedent is empty")
        strength = 1.0
        for var_name, term_label in rule.antecedent:
            var = self.input_variable(var_name)
            if var_name not in inputs:
                raise UnknownVariable(f"no input value supplied for {var_name!r}")
            strength = min(strength, var.term(term_label).degree(float(inputs[var_name])))
            if strength == 0.0:
                break
        return strength

    def infer(self, inputs: Mapping[str, float]) -> InferenceOutcome:
        """Mamdani composition over all rules.

        Each rule's consequent is clipped at its fire strength, the clipped
        functions are aggregated pointwise by max over a uniform sample grid
        of the output range, and the crisp result is that grid's centroid.
        Inputs outside a variable's range are clamped; values for variables
        the system does not define raise UnknownVariable.

        Raises NoRuleFired when the aggregated output has zero mass.
        """
        known = {v.name for v in self.inputs}
        for name in inputs:
            if name not in known:
                raise UnknownVariable(f"no input variable named {name!r}")
        clamped = {
            v.name: v.clamp(inputs[v.name]) for v in self.inputs if v.name in inputs
        }
        strengths = tuple(self.fire_strength(rule, clamped) for rule in self.rules)
        max_strength = max(strengths, default=0.0)
        if max_strength == 0.0:
            raise NoRuleFired("no rule fired for the given inputs")

        xs = np.linspace(self.output.lo, self.output.hi, self.defuzz_samples)
        aggregate = np.zeros_like(xs)
        for rule, strength in zip(self.rules, strengths):
            if strength == 0.0:
                continue
            clipped = np.minimum(strength, self.output.term(rule.consequent).degrees(xs))
            np.maximum(aggregate, clipped, out=aggregate)
        mass = float(aggregate.sum())
        if mass == 0.0:
            raise NoRuleFired("aggregated output has zero mass")
        crisp = float((xs * aggregate).sum() / mass)
        return InferenceOutcome(crisp, strengths, max_strength)
