"""Batch front door: config parsing, experiment orchestration, reports.

Exit codes: 0 success, 2 hypothesis violation, 3 search or cap
exhaustion, 4 configuration error.  Reports are deterministic: exact
rationals print as p/q, reals as fixed 12-digit decimals, and outputs are
byte-identical across runs and thread counts.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .density import (
    DensityParams,
    FixedDivisorError,
    HypothesisError,
    SievePolynomial,
    check_hypotheses,
    empirical_count,
    error_exponent,
    euler_density,
)
from .fieldspec import FieldSpecError, load_field_spec
from .geometry import RegionBox
from .ideal import NonMonogenicError, ResidueCapError, split_prime
from .intervals import fmt_decimal, fmt_decimal_down, fmt_decimal_up
from .tower import (
    SearchExhausted,
    belcher_criterion,
    build_tower,
    quadratic_step,
    verify_unit_generation,
)

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_EXHAUSTED = 3
EXIT_CONFIG = 4


class ConfigError(ValueError):
    pass


def _parse_coords(text, n):
    try:
        coords = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ConfigError(f"bad coordinate vector {text!r}")
    if len(coords) != n:
        raise ConfigError(f"expected {n} coordinates, got {len(coords)}")
    return coords


def _parse_boxes(text):
    try:
        xs = [int(x) for x in text.split(",")]
    except ValueError:
        raise ConfigError(f"bad box schedule {text!r}")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ConfigError("box schedule must be strictly increasing")
    if any(x < 1 for x in xs):
        raise ConfigError("box volumes must be at least 1")
    return xs


def _excluded_primes(field, text):
    if not text or text == "none":
        return ()
    out = []
    for part in text.split(","):
        try:
            p = int(part)
        except ValueError:
            raise ConfigError(f"bad rational prime {part!r}")
        out.extend(split_prime(field, p))
    return tuple(out)


def _emit(out_path, text):
    data = text.encode("utf-8")
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)


def _diag(kind, message):
    sys.stderr.write(json.dumps({"error": kind, "message": str(message)}) + "\n")


# -- sharded counting ----------------------------------------------------------


def _count_shard(payload):
    (field_source, order_name, eta_coords, exclude_text, m, volume, shard_idx, shards) = payload
    spec = load_field_spec(field_source)
    field = spec.field
    order = spec.order_by_name(order_name)
    eta = field.element(eta_coords)
    poly = SievePolynomial.x_squared_minus(4 * eta)
    excluded = _merge_conductor(field, order, _excluded_primes(field, exclude_text))
    params = DensityParams(order=order, poly=poly, excluded=excluded, m=m)
    box = RegionBox.cube(field.signature, volume)
    return empirical_count(params, box, shard=(shard_idx, shards))


def _merge_conductor(field, order, excluded):
    support = [pid for pid, _ in order.conductor().factor()]
    merged = sorted(set(excluded) | set(support), key=lambda q: q.sort_key())
    return tuple(merged)


def _counts_for_boxes(args, field, order, params, xs, threads, field_source):
    counts = []
    for x in xs:
        box = RegionBox.cube(field.signature, x)
        if threads <= 1:
            counts.append(empirical_count(params, box))
        else:
            payloads = [
                (field_source, args.order, _parse_coords(args.eta, field.degree),
                 args.exclude, args.m, x, i, threads)
                for i in range(threads)
            ]
            with ProcessPoolExecutor(max_workers=threads) as pool:
                shard_counts = list(pool.map(_count_shard, payloads))
            counts.append(sum(shard_counts))
    return counts


# -- subcommands ---------------------------------------------------------------


def cmd_density(args):
    spec = load_field_spec(args.field)
    field = spec.field
    order = spec.order_by_name(args.order)
    eta = field.element(_parse_coords(args.eta, field.degree))
    poly = SievePolynomial.x_squared_minus(4 * eta)
    excluded = _merge_conductor(field, order, _excluded_primes(field, args.exclude))
    params = DensityParams(order=order, poly=poly, excluded=excluded, m=args.m)
    xs = _parse_boxes(args.boxes)
    report = euler_density(params, args.truncation)
    threads = args.threads
    counts = _counts_for_boxes(args, field, order, params, xs, threads, args.field)
    d_lo = fmt_decimal_down(report.d_lower)
    d_hi = fmt_decimal_up(report.d_upper)
    lines = [
        "# unitring density report",
        f"# field={spec.name}\torder={args.order or 'maximal'}\teta={args.eta}\tm={args.m}",
        f"# excluded={args.exclude or 'none'}\ttruncation={args.truncation}",
        f"# conductor_sum={report.conductor_sum}\texcluded_product={report.excluded_product}",
        "# exponents\tl={}\tc={}\teps={}\tu={}".format(*report.exponent_data),
        "x\tN\tN_over_x\tD_lo\tD_hi\trel_err",
    ]
    mid = report.d_mid
    for x, n in zip(xs, counts):
        ratio = Fraction(n, x)
        rel = abs(ratio - mid) / mid if mid else Fraction(0)
        lines.append(
            f"{x}\t{n}\t{fmt_decimal(ratio)}\t{d_lo}\t{d_hi}\t{fmt_decimal(rel)}"
        )
    _emit(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_count(args):
    spec = load_field_spec(args.field)
    field = spec.field
    order = spec.order_by_name(args.order)
    eta = field.element(_parse_coords(args.eta, field.degree))
    poly = SievePolynomial.x_squared_minus(4 * eta)
    excluded = _merge_conductor(field, order, _excluded_primes(field, args.exclude))
    params = DensityParams(order=order, poly=poly, excluded=excluded, m=args.m)
    xs = _parse_boxes(args.boxes)
    counts = _counts_for_boxes(args, field, order, params, xs, args.threads, args.field)
    lines = [
        "# unitring count report",
        f"# field={spec.name}\torder={args.order or 'maximal'}\teta={args.eta}\tm={args.m}",
        f"# excluded={args.exclude or 'none'}",
        "x\tN\tN_over_x",
    ]
    for x, n in zip(xs, counts):
        lines.append(f"{x}\t{n}\t{fmt_decimal(Fraction(n, x))}")
    _emit(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _tower_to_json(spec_name, args, tower, verification):
    return {
        "field": spec_name,
        "min_poly": list(tower.field.min_poly),
        "integral_basis": [[str(x) for x in row] for row in tower.field.basis],
        "start_order": [list(r) for r in tower.start_order.basis_hnf],
        "eta": list(tower.eta.coords),
        "steps": [
            {
                "omega": list(st.omega.coords),
                "disc_hnf": [list(r) for r in st.disc_ideal.hnf],
                "disc_norm": st.disc_element_norm,
            }
            for st in tower.steps
        ],
        "final_index": tower.final_index,
        "compositum_sets": [sorted(s) for s in tower.compositum_sets],
        "verification": verification.as_dict(),
    }


def cmd_tower(args):
    spec = load_field_spec(args.field)
    field = spec.field
    if args.order:
        start = spec.order_by_name(args.order)
    elif spec.units:
        from .tower import unit_order

        start = unit_order(field, spec.units)
    else:
        raise ConfigError("no start order and no units declared in the field spec")
    if args.eta:
        eta = field.element(_parse_coords(args.eta, field.degree))
    elif spec.units:
        eta = _default_eta(field, spec.units)
    else:
        raise ConfigError("no eta given and no units declared")
    tower = build_tower(field, start_order=start, eta=eta, search_bound=args.search_bound)
    verification = verify_unit_generation(tower)
    doc = _tower_to_json(spec.name, args, tower, verification)
    _emit(args.out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if verification.all_passed() else 1


def _default_eta(field, units):
    """First declared unit that is not a square, else its cube."""
    from .field import is_square_in_field

    for u in units:
        if not is_square_in_field(u):
            return u
        cube = u * u * u
        if not is_square_in_field(cube):
            return cube
    raise ConfigError("every declared unit is a square; give --eta explicitly")


def cmd_belcher(args):
    if args.d is not None:
        value = belcher_criterion(args.d)
        _emit(args.out, f"d\tgenerated_by_units\n{args.d}\t{value}\n")
        return EXIT_OK
    bound = args.table
    from .intfactor import is_squarefree_int

    lines = ["d\tgenerated_by_units"]
    for d in range(-bound, bound + 1):
        if d in (0, 1) or not is_squarefree_int(d):
            continue
        lines.append(f"{d}\t{belcher_criterion(d)}")
    _emit(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args):
    with open(args.tower, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    from .field import NumberField
    from .ideal import IdealLattice
    from .order import SubOrder
    from .tower import Tower, compositum_basis

    basis = None
    if "integral_basis" in doc:
        basis = [[Fraction(x) for x in row] for row in doc["integral_basis"]]
    field = NumberField(doc["min_poly"], integral_basis=basis)
    start = SubOrder(field, [tuple(r) for r in doc["start_order"]])
    eta = field.element(doc["eta"])
    steps = []
    for st in doc["steps"]:
        omega = field.element(st["omega"])
        step = quadratic_step(omega, eta)
        if [list(r) for r in step.disc_ideal.hnf] != st["disc_hnf"]:
            _diag("verify", "stored discriminant HNF does not match recomputation")
            return 1
        steps.append(step)
    tower = Tower(
        field=field,
        start_order=start,
        eta=eta,
        steps=steps,
        final_order=_rebuild_final(start, steps),
        compositum_sets=[frozenset(s) for s in doc["compositum_sets"]],
        relative_disc=compositum_basis(steps)[1] if steps else IdealLattice.unit_ideal(field),
    )
    verification = verify_unit_generation(tower)
    result = verification.as_dict()
    lines = ["check\tpassed"]
    for key in sorted(result):
        lines.append(f"{key}\t{result[key]}")
    _emit(args.out, "\n".join(lines) + "\n")
    return EXIT_OK if verification.all_passed() else 1


def _rebuild_final(start, steps):
    current = start
    for st in steps:
        current = current.adjoin(st.omega)
    return current


def build_parser():
    parser = argparse.ArgumentParser(
        prog="unitring",
        description="m-free value sieves over orders and unit-generated towers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field", required=True,
                       help="field spec path or bundled name (q_sqrt5, q_sqrt2, q_i)")
        p.add_argument("--order", default="", help="named order from the spec, or 'maximal'")
        p.add_argument("--eta", required=True, help="coordinates of eta, comma separated")
        p.add_argument("--m", type=int, default=2)
        p.add_argument("--exclude", default="",
                       help="rational primes whose ideal factors are excluded, comma separated")
        p.add_argument("--boxes", default="100,1000,10000",
                       help="strictly increasing volumes x, comma separated")
        p.add_argument("--threads", type=int,
                       default=int(os.environ.get("UNITRING_THREADS", "1")))
        p.add_argument("--out", default="", help="output path (default stdout)")

    p_density = sub.add_parser("density", help="Euler product density and empirical counts")
    common(p_density)
    p_density.add_argument("--truncation", type=int, default=10**4)
    p_density.set_defaults(func=cmd_density)

    p_count = sub.add_parser("count", help="empirical sieve counts only")
    common(p_count)
    p_count.set_defaults(func=cmd_count)

    p_tower = sub.add_parser("tower", help="build and verify the unit tower")
    p_tower.add_argument("--field", required=True)
    p_tower.add_argument("--order", default="", help="explicit start order name")
    p_tower.add_argument("--eta", default="", help="coordinates of the unit eta")
    p_tower.add_argument("--search-bound", type=int, default=2000)
    p_tower.add_argument("--out", default="")
    p_tower.set_defaults(func=cmd_tower)

    p_belcher = sub.add_parser("belcher", help="quadratic unit-generation criterion")
    p_belcher.add_argument("-d", type=int, default=None)
    p_belcher.add_argument("--table", type=int, default=100)
    p_belcher.add_argument("--out", default="")
    p_belcher.set_defaults(func=cmd_belcher)

    p_verify = sub.add_parser("verify", help="re-verify a serialized tower")
    p_verify.add_argument("--tower", required=True)
    p_verify.add_argument("--out", default="")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HypothesisError as e:
        _diag("hypothesis", e)
        return EXIT_HYPOTHESIS
    except (SearchExhausted, ResidueCapError, NonMonogenicError) as e:
        _diag("exhausted", e)
        return EXIT_EXHAUSTED
    except (ConfigError, FieldSpecError, FixedDivisorError) as e:
        _diag("config", e)
        return EXIT_CONFIG
    except ValueError as e:
        _diag("config", e)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
