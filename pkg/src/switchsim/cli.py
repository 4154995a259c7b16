"""Command-line surface: verification suite, capacity sweeps, Choi dumps,
threshold tables and protocol runs.

Exit codes: 0 success, 1 verification failure, 2 usage/resource/IO error.
All commands are deterministic given their flags and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import channels, info, protocol, switch
from .errors import KrausBudgetError
from .linalg import max_entangled_ket
from .tolerances import DEFAULT_KRAUS_BUDGET, HERMITIAN_ATOL, ORACLE_ATOL

CSV_HEADER = "N,d,p,s_min_e0,s_min_e1,capacity_bits,asymptote_bits"


@dataclass(frozen=True)
class SweepConfig:
    d_values: tuple[int, ...]
    n_min: int
    n_max: int
    output_path: str
    format: str = "csv"
    seed: int = 0

    def __post_init__(self):
        if not self.d_values or any(d < 2 for d in self.d_values):
            raise ValueError("d values must be a nonempty list of integers >= 2")
        if self.n_min < 2 or self.n_max < self.n_min:
            raise ValueError("need 2 <= n_min <= n_max")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.format!r}")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# capacity sweep


def sweep_rows(config: SweepConfig) -> list[dict]:
    rows = []
    for d in sorted(set(config.d_values)):
        for n in range(config.n_min, config.n_max + 1):
            r = info.classical_capacity(n, d)
            rows.append(
                {
                    "N": r.N,
                    "d": r.d,
                    "p": r.p,
                    "s_min_e0": r.s_min_e0,
                    "s_min_e1": r.s_min_e1,
                    "capacity_bits": r.capacity,
                    "asymptote_bits": r.asymptote,
                }
            )
    return rows


def cmd_capacity(config: SweepConfig) -> int:
    rows = sweep_rows(config)
    if config.format == "csv":
        lines = [CSV_HEADER]
        for r in rows:
            lines.append(
                ",".join(
                    [str(r["N"]), str(r["d"])]
                    + [_fmt(r[k]) for k in ("p", "s_min_e0", "s_min_e1", "capacity_bits", "asymptote_bits")]
                )
            )
        payload = "\n".join(lines) + "\n"
    else:
        payload = json.dumps(rows, indent=2) + "\n"
    with open(config.output_path, "w", newline="") as f:
        f.write(payload)
    return 0


# ---------------------------------------------------------------------------
# Choi dump


def choi_to_json_dict(c: channels.ChoiOperator, dims: list[int]) -> dict:
    """Serialisable form of a Choi matrix: subsystem dims (input last),
    convention, and row-major real/imaginary parts."""
    return {
        "dims": list(int(x) for x in dims),
        "convention": c.convention,
        "re": c.matrix.real.tolist(),
        "im": c.matrix.imag.tolist(),
    }


def choi_from_json_dict(obj: dict) -> channels.ChoiOperator:
    dims = [int(x) for x in obj["dims"]]
    m = np.array(obj["re"], dtype=np.float64) + 1j * np.array(obj["im"], dtype=np.float64)
    dim_in = dims[-1]
    dim_out = int(np.prod(dims[:-1]))
    return channels.ChoiOperator(m, dim_in, dim_out, obj["convention"])


def cmd_choi(N: int, d: int, form: str, out: str, budget: int = DEFAULT_KRAUS_BUDGET) -> int:
    if form == "closed":
        c = switch.effective_channel_closed_form(N, d)
    elif form == "brute":
        c = switch.effective_channel_bruteforce(switch.depolarizing_switch(N, d), budget=budget)
    else:
        raise ValueError(f"unknown form {form!r}")
    with open(out, "w", newline="") as f:
        json.dump(choi_to_json_dict(c, [N, d, d]), f)
        f.write("\n")
    return 0


# ---------------------------------------------------------------------------
# thresholds table


def threshold_order_count(d: int, n_probe_max: int = 1000) -> int:
    """Least N with a distillable depolarising branch."""
    for n in range(2, n_probe_max + 1):
        if info.two_way_capacity_positive(n, d):
            return n
    raise RuntimeError(f"no threshold found below N={n_probe_max}")


def cmd_thresholds(d_max: int, stream=None) -> int:
    if d_max < 2:
        raise ValueError(f"need d_max >= 2, got {d_max}")
    stream = stream or sys.stdout
    print(f"{'d':>3} {'N_threshold':>12} {'lambda_max':>14}", file=stream)
    for d in range(2, d_max + 1):
        n_star = threshold_order_count(d)
        print(f"{d:>3} {n_star:>12} {info.lambda_max(d):>14.9f}", file=stream)
    return 0


# ---------------------------------------------------------------------------
# protocol run


def cmd_protocol(N: int, d: int, shots: int, seed: int, out: str | None = None) -> int:
    run = protocol.run_protocol(N, d, shots, seed)
    payload = json.dumps(asdict(run), indent=2) + "\n"
    if out:
        with open(out, "w", newline="") as f:
            f.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


# ---------------------------------------------------------------------------
# verification suite


def _check_basis_identities(budget: int, rng) -> float:
    dev = 0.0
    for d in (2, 3, 4, 5):
        basis = channels.weyl_basis(d).elements
        eye = np.eye(d)
        for _ in range(12):
            m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            twirl = sum(u @ m @ u.conj().T for u in basis) / d**2
            dev = max(dev, float(np.max(np.abs(twirl - np.trace(m) * eye / d))))
            comp = sum(u * np.trace(m @ u.conj().T) for u in basis)
            dev = max(dev, float(np.max(np.abs(comp - d * m))))
    return dev


def _check_cross_order(budget: int, rng) -> float:
    dev = 0.0
    for n, d in ((2, 2), (3, 2), (2, 3)):
        spec = switch.depolarizing_switch(n, d)
        white = np.eye(d * d) / d
        phi = max_entangled_ket(d)
        coherent = np.outer(phi, phi.conj()) * d / d**2
        for p in spec.perms.perms:
            for q in spec.perms.perms:
                got = switch.c_pi_pi_prime(spec, p, q, budget=budget)
                want = white if p == q else coherent
                expect = channels.ChoiOperator(want, d, d, "operator")
                dev = max(dev, channels.choi_distance(got, expect))
    return dev


def _check_closed_vs_brute(budget: int, rng) -> float:
    dev = 0.0
    for n, d in ((2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3)):
        brute = switch.effective_channel_bruteforce(switch.depolarizing_switch(n, d), budget=budget)
        closed = switch.effective_channel_closed_form(n, d)
        dev = max(dev, channels.choi_distance(brute, closed))
    return dev


def _check_e1_choi(budget: int, rng) -> float:
    dev = 0.0
    for d in (2, 3, 4):
        got = channels.kraus_to_choi(channels.e1_channel(d))
        phi = max_entangled_ket(d)
        want = (np.eye(d * d) - np.outer(phi, phi.conj())) * d / (d**2 - 1.0)
        dev = max(dev, channels.choi_distance(got, channels.ChoiOperator(want, d, d, "operator")))
    return dev


def _check_heralded_branches(budget: int, rng) -> float:
    n, d = 5, 2
    decomp = switch.heralded_decomposition(switch.effective_channel_closed_form(n, d), n, d)
    p = switch.coherent_branch_probability(n, d)
    dev = abs(decomp.branches[0].probability - (1 - p))
    dev = max(dev, abs(decomp.branches[1].probability - p))
    dev = max(
        dev,
        channels.channel_distance(decomp.branches[0].channel, channels.e0_channel(n, d)),
        channels.channel_distance(decomp.branches[1].channel, channels.e1_channel(d)),
    )
    return float(dev)


def _check_n2_adjoint(budget: int, rng) -> float:
    dev = 0.0
    d = 2
    for _ in range(3):
        omega = channels.random_density(2, rng)
        r = channels.random_channel(d, d, rng)
        direct = switch.n2_with_intermediate(r, omega, budget=budget)
        via = switch.n2_intermediate_via_adjoint(r, omega, budget=budget)
        dev = max(dev, channels.choi_distance(direct, via))
        dep = channels.completely_depolarizing(d)
        bare = switch.effective_channel_bruteforce(
            switch.SwitchSpec(2, d, (dep, dep), omega), budget=budget
        )
        dev = max(dev, channels.choi_distance(bare, switch.n2_jeff_closed_form(omega, d)))
    return dev


def _check_partial_depolarizing(budget: int, rng) -> float:
    dev = 0.0
    d = 2
    for lam in (0.0, 0.3, 0.7):
        spec = switch.SwitchSpec(
            2, d, (channels.depolarizing(d, lam),) * 2, switch.uniform_control(2)
        )
        brute = switch.effective_channel_bruteforce(spec, budget=budget)
        decomp = switch.heralded_decomposition(brute, 2, d)
        expect = switch.partial_switch_n2(lam, d)
        dev = max(dev, abs(decomp.branches[0].probability - expect.weights[0]))
        dev = max(dev, abs(decomp.branches[1].probability - expect.weights[1]))
        dev = max(
            dev,
            channels.channel_distance(decomp.branches[0].channel, expect.heralded_plus),
            channels.channel_distance(decomp.branches[1].channel, expect.heralded_minus),
        )
    return float(dev)


VERIFY_CHECKS = (
    ("unitary-basis-identities", HERMITIAN_ATOL, _check_basis_identities),
    ("cross-order-identities", HERMITIAN_ATOL, _check_cross_order),
    ("closed-vs-brute", ORACLE_ATOL, _check_closed_vs_brute),
    ("e1-choi-match", ORACLE_ATOL, _check_e1_choi),
    ("heralded-branch-match", ORACLE_ATOL, _check_heralded_branches),
    ("n2-adjoint-identity", ORACLE_ATOL, _check_n2_adjoint),
    ("partial-depolarising-match", ORACLE_ATOL, _check_partial_depolarizing),
)


def cmd_verify(budget: int = DEFAULT_KRAUS_BUDGET, seed: int = 0, stream=None) -> int:
    stream = stream or sys.stdout
    rng = np.random.default_rng(seed)
    first_failure = None
    print(f"verification suite (budget={budget}, seed={seed})", file=stream)
    for name, tol, fn in VERIFY_CHECKS:
        dev = fn(budget, rng)
        ok = dev <= tol
        status = "PASS" if ok else "FAIL"
        print(f"{name:<28} max deviation {dev:.3e}  (tol {tol:.0e})  {status}", file=stream)
        if not ok and first_failure is None:
            first_failure = name
    if first_failure is not None:
        print(f"FAILED: {first_failure}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="switchsim",
        description="Cyclic-order quantum switch toolkit: verification, sweeps, dumps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the cross-module oracle suites")
    p.add_argument("--budget", type=int, default=DEFAULT_KRAUS_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=lambda a: cmd_verify(a.budget, a.seed))

    p = sub.add_parser("capacity", help="write a capacity sweep over (d, N)")
    p.add_argument("--d", type=int, action="append", required=True,
                   help="message dimension; repeat for several")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(
        func=lambda a: cmd_capacity(
            SweepConfig(tuple(a.d), a.n_min, a.n_max, a.out, a.format, a.seed)
        )
    )

    p = sub.add_parser("choi", help="dump the effective-channel Choi matrix as JSON")
    p.add_argument("--n", type=int, required=True, help="number of superposed orders")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--form", choices=("closed", "brute"), default="closed")
    p.add_argument("--out", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_KRAUS_BUDGET)
    p.set_defaults(func=lambda a: cmd_choi(a.n, a.d, a.form, a.out, a.budget))

    p = sub.add_parser("thresholds", help="per-dimension distillability thresholds")
    p.add_argument("--d-max", type=int, default=5)
    p.set_defaults(func=lambda a: cmd_thresholds(a.d_max))

    p = sub.add_parser("protocol", help="run the heralded protocol simulation")
    p.add_argument("--n", type=int, required=True, help="number of superposed orders")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=lambda a: cmd_protocol(a.n, a.d, a.shots, a.seed, a.out))

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KrausBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
