"""Packages are moved between locations by trucks within a city and by airplanes between airports.

Location `l<c>-1` is the airport of city `c<c>`. Truck `t<i>` starts at the
airport of city `i mod cities`, every airplane at the airport of the first
city. Package origins and destinations are drawn from the `seed` parameter.
"""

from causalplan.benchmarks.core.family import InstanceFamily, Params, atoms, objects

DOMAIN = """\
(define (domain logistics)
  (:requirements :strips :typing :equality :negative-preconditions)
  (:types
    truck airplane - vehicle
    package vehicle - locatable
    location city - object)
  (:predicates
    (at ?x - locatable ?l - location)
    (in ?p - package ?v - vehicle)
    (in-city ?l - location ?c - city)
    (airport ?l - location))
  (:action load-truck
    :parameters (?p - package ?t - truck ?l - location)
    :precondition (and (at ?t ?l) (at ?p ?l))
    :effect (and (in ?p ?t) (not (at ?p ?l))))
  (:action unload-truck
    :parameters (?p - package ?t - truck ?l - location)
    :precondition (and (at ?t ?l) (in ?p ?t))
    :effect (and (at ?p ?l) (not (in ?p ?t))))
  (:action load-airplane
    :parameters (?p - package ?a - airplane ?l - location)
    :precondition (and (at ?a ?l) (at ?p ?l))
    :effect (and (in ?p ?a) (not (at ?p ?l))))
  (:action unload-airplane
    :parameters (?p - package ?a - airplane ?l - location)
    :precondition (and (at ?a ?l) (in ?p ?a))
    :effect (and (at ?p ?l) (not (in ?p ?a))))
  (:action drive-truck
    :parameters (?t - truck ?from ?to - location ?c - city)
    :precondition (and (at ?t ?from) (in-city ?from ?c) (in-city ?to ?c) (not (= ?from ?to)))
    :effect (and (at ?t ?to) (not (at ?t ?from))))
  (:action fly-airplane
    :parameters (?a - airplane ?from ?to - location)
    :precondition (and (at ?a ?from) (airport ?from) (airport ?to) (not (= ?from ?to)))
    :effect (and (at ?a ?to) (not (at ?a ?from)))))
"""


class Logistics(InstanceFamily):
    """Logistics with trucks, airplanes and packages over a few cities."""

    name = "Logistics"
    description = "Trucks and airplanes deliver packages between city locations"
    defaults = {"cities": 2, "locations": 1, "trucks": 2, "airplanes": 1, "packages": 1, "seed": 0}

    def domain_text(self) -> str:
        """Return the logistics domain."""
        return DOMAIN

    def problem_text(self, params: Params) -> str:
        """Return a problem with random package origins and destinations.

        Raises:
            ValueError: If a count is not positive or there are fewer than two locations.

        """
        counts = ("cities", "locations", "trucks", "airplanes", "packages")
        if any(params[key] < 1 for key in counts):
            raise ValueError(f"logistics needs at least one of each: {', '.join(counts)}")
        if params["cities"] * params["locations"] < 2:
            raise ValueError("logistics needs at least two locations")
        rng = self.rng(params)
        cities = [f"c{c}" for c in range(1, params["cities"] + 1)]
        locations = [f"l{c}-{i}" for c in range(1, params["cities"] + 1) for i in range(1, params["locations"] + 1)]
        trucks = [f"t{i}" for i in range(1, params["trucks"] + 1)]
        airplanes = [f"a{i}" for i in range(1, params["airplanes"] + 1)]
        packages = [f"p{i}" for i in range(1, params["packages"] + 1)]

        init: list[tuple[str, ...]] = []
        for c, city in enumerate(cities, start=1):
            init.append(("airport", f"l{c}-1"))
            init.extend(("in-city", f"l{c}-{i}", city) for i in range(1, params["locations"] + 1))
        init.extend(("at", truck, f"l{i % params['cities'] + 1}-1") for i, truck in enumerate(trucks))
        init.extend(("at", airplane, "l1-1") for airplane in airplanes)
        goal = []
        for package in packages:
            origin, destination = rng.choice(len(locations), size=2, replace=False)
            init.append(("at", package, locations[origin]))
            goal.append(("at", package, locations[destination]))
        name = "-".join(str(params[key]) for key in (*counts, "seed"))
        return f"""\
(define (problem logistics-{name})
  (:domain logistics)
  (:objects
    {objects(cities, "city")}
    {objects(locations, "location")}
    {objects(trucks, "truck")}
    {objects(airplanes, "airplane")}
    {objects(packages, "package")})
  (:init
{atoms(init)})
  (:goal (and
{atoms(goal)})))
"""

    def suite(self) -> list[Params]:
        """Two-truck micro-instances."""
        return [
            {"cities": 2, "locations": 1, "trucks": 2, "airplanes": 1, "packages": 1, "seed": 0},
            {"cities": 2, "locations": 1, "trucks": 2, "airplanes": 1, "packages": 1, "seed": 1},
            {"cities": 1, "locations": 3, "trucks": 2, "airplanes": 1, "packages": 1, "seed": 0},
        ]
