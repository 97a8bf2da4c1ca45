"""Seeded random Mamdani system generator shared by the fuzzy tests and
the acceptance suite."""

from __future__ import annotations

import random

from glyphfuzz.fuzzy import FisDefinition, LinguisticVariable, MembershipFunction, Rule


def random_variable(rng: random.Random, name: str) -> LinguisticVariable:
    """Variable whose consecutive trapezoids overlap, so [lo, hi] is covered."""
    lo = rng.uniform(-50.0, 50.0)
    hi = lo + rng.uniform(5.0, 100.0)
    n_terms = rng.randint(2, 4)
    interior = sorted(rng.uniform(lo, hi) for _ in range(2 * n_terms - 2))
    anchors = [lo, lo, *interior, hi, hi]
    terms = []
    for i in range(n_terms):
        a, b, c, d = anchors[2 * i : 2 * i + 4]
        terms.append((f"t{i}", MembershipFunction(a, b, c, d)))
    return LinguisticVariable(name, lo, hi, tuple(terms))


def random_fis(rng: random.Random) -> tuple[FisDefinition, dict[str, float]]:
    """A random system plus a crisp input point inside every range."""
    n_inputs = rng.randint(1, 4)
    inputs = tuple(random_variable(rng, f"in{i}") for i in range(n_inputs))
    output = random_variable(rng, "out")
    rules = []
    for _ in range(rng.randint(1, 6)):
        antecedent = {
            var.name: rng.choice(var.labels)
            for var in inputs
            if rng.random() < 0.8
        }
        if not antecedent:
            var = rng.choice(inputs)
            antecedent[var.name] = rng.choice(var.labels)
        rules.append(Rule.of(antecedent, rng.choice(output.labels)))
    fis = FisDefinition(inputs, output, tuple(rules))
    values = {var.name: rng.uniform(var.lo, var.hi) for var in inputs}
    return fis, values


def as_oracle_tables(fis: FisDefinition):
    """Unpack a system into the plain dict/tuple form the dense oracle takes."""
    input_terms = {
        var.name: {label: (mf.a, mf.b, mf.c, mf.d) for label, mf in var.terms}
        for var in fis.inputs
    }
    output_terms = {
        label: (mf.a, mf.b, mf.c, mf.d) for label, mf in fis.output.terms
    }
    rules = [(dict(rule.antecedent), rule.consequent) for rule in fis.rules]
    return input_terms, (fis.output.lo, fis.output.hi), output_terms, rules
