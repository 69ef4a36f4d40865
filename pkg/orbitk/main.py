#!/usr/bin/env python3
"""
Demonstrates orbit category invariants: Grothendieck groups of cluster
categories, the orbit triangle for a graded invariant, periodic cyclic
homology of line bundle twists and the finite dg orbit constructions.
"""
from orbitk.abgroup import FgAbGroup
from orbitk.cluster import cluster_k0, kleinian_k0
from orbitk.dgcore import (
    DgEndofunctor,
    comparison_map_check,
    disjoint_pair,
    epsilon_quasi_iso_check,
    orbit_n,
    point_category,
    swap_functor,
)
from orbitk.mukai import CurveK0, curve_orbit_report, line_bundle_hp_map
from orbitk.mukai_models import ModelFactory
from orbitk.orbit_triangle import (
    GroupDegree,
    InvariantSpec,
    hp_orbit_dims,
    orbit_groups,
)
from orbitk.quiver_presets import QuiverFactory


def demonstrate_cluster_categories():
    """
    Grothendieck groups of cluster categories and Kleinian singularities.
    """
    print("Cluster categories")
    print("==================")
    for name in ["A1", "A4", "D4", "E8"]:
        group = cluster_k0(QuiverFactory.create(name), 0)
        print(f"K0 of the 0-cluster category of {name}: {group}")
    kronecker = cluster_k0(QuiverFactory.create("kronecker3"), 1)
    print(f"K0 of the 1-cluster category of kronecker3: {kronecker}")
    for s in range(1, 5):
        print(f"K0 of the A_{s} singularity: {kleinian_k0(s)}")


def demonstrate_orbit_triangle():
    """
    Orbit groups of a connective invariant on which F acts trivially.
    """
    print("\nOrbit triangle")
    print("==============")
    spec = InvariantSpec(
        {
            0: GroupDegree.of(FgAbGroup.free(1)),
            1: GroupDegree.of(FgAbGroup.cyclic(2)),
        },
        connective=True,
        identity_action=True,
    )
    for result in orbit_groups(spec):
        print(f"degree {result.degree}: {result.resolved}")


def demonstrate_line_bundles():
    """
    HP of the orbit category of a line bundle twist on curves, and KH0.
    """
    print("\nLine bundle twists")
    print("==================")
    for genus in range(3):
        model = ModelFactory.create("curve", genus=genus, degree=1)
        plus, minus = hp_orbit_dims(*line_bundle_hp_map(model, 0))
        print(f"genus {genus}: HP+ = {plus}, HP- = {minus}")
    for n in (0, 1):
        report = curve_orbit_report(CurveK0.of(FgAbGroup.free(1), [1]), n)
        print(f"KH0 for [L] = 1, n = {n}: {report.computed}")
        for warning in report.warnings:
            print(f"  warning [{warning.code}]")


def demonstrate_dg_orbits():
    """
    The truncated orbit category of the point, and the structure checks.
    """
    print("\nFinite dg orbit categories")
    print("==========================")
    point = point_category()
    orbit = orbit_n(point, DgEndofunctor.identity(point), 3)
    print(f"End(x) in {orbit.category.name}: {orbit.hom('x', 'x').dims()}")

    pair = disjoint_pair()
    swap = swap_functor(pair)
    epsilon = epsilon_quasi_iso_check(pair, swap, 4, 2)
    comparison = comparison_map_check(pair, swap, 4)
    print(f"swap on the pair: epsilon {epsilon.passed}, comparison {comparison.passed}")


def main():
    """
    Main function to run the orbit category demonstrations.
    """
    demonstrate_cluster_categories()
    demonstrate_orbit_triangle()
    demonstrate_line_bundles()
    demonstrate_dg_orbits()


if __name__ == "__main__":
    main()
