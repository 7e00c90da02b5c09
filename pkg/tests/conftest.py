"""Shared test fixtures and the acceptance-criteria summary hook."""

from __future__ import annotations

import random

from ascentlab.vcsp import SoftConstraint, VcspInstance

_acceptance_results: list[tuple[str, bool]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance_results.append((report.nodeid.split("::")[-1], report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in _acceptance_results:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")


def random_instance(rng: random.Random, num_vars=6, max_domain=4,
                    num_constraints=5, max_arity=3, max_weight=5,
                    max_cost=9) -> VcspInstance:
    """Small random table VCSP for oracle cross-checks."""
    domains = tuple(rng.randint(2, max_domain) for _ in range(num_vars))
    constraints = []
    for _ in range(num_constraints):
        arity = rng.randint(1, min(max_arity, num_vars))
        scope = tuple(rng.sample(range(num_vars), arity))
        size = 1
        for v in scope:
            size *= domains[v]
        values = tuple(rng.randint(0, max_cost) for _ in range(size))
        constraints.append(SoftConstraint(scope, rng.randint(0, max_weight), values))
    return VcspInstance(domains, tuple(constraints))


def random_assignment(rng: random.Random, instance: VcspInstance):
    return tuple(rng.randrange(d) for d in instance.domains)
