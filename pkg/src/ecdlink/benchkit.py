"""Timing harness for the curve size ladder.

Measures key generation, encryption, and decryption per curve with a
monotonic wall clock, reporting the median over a fixed number of
repetitions after one discarded warm-up pass. Timings are strictly
single-threaded; absolute numbers are hardware-specific, only the trends
(keygen cheapest, costs growing with curve size) are meaningful.

Output formats: a CSV with six-decimal seconds, a whitespace-separated
"bits encrypt-seconds" file for external plotting, and an optional
rendered matplotlib figure of the cost curves.

Signature timing (sign/verify per curve) is a separate, clearly
auxiliary table with its own CSV; it is not part of the core format.
"""

from __future__ import annotations

import csv
import io
import logging
import statistics
import time
from dataclasses import dataclass
from typing import Callable, Sequence

from . import ecdsa
from .curves import CurveParams, curve_from_name, keygen
from .ecelgamal import decrypt, encrypt
from .modmath import RandomSource, SystemRandom

log = logging.getLogger(__name__)

DEFAULT_PAYLOAD_LEN = 31  # matches the ARP display string workload

CSV_HEADER = "curve,bits,keygen_s,encrypt_s,decrypt_s,reps"
SIG_CSV_HEADER = "curve,bits,sign_s,verify_s,reps"


@dataclass(frozen=True)
class BenchRow:
    curve: str
    bits: int
    keygen_s: float
    encrypt_s: float
    decrypt_s: float
    reps: int


@dataclass(frozen=True)
class SigBenchRow:
    curve: str
    bits: int
    sign_s: float
    verify_s: float
    reps: int


def _timed(fn: Callable[[], object]) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def _median_rounds(fns: Sequence[Callable[[], object]], reps: int) -> list[float]:
    """Median seconds per function, measured in interleaved rounds.

    One round times each function once; scheduler noise and frequency
    drift then spread across all of them instead of piling onto whichever
    ran last.
    """
    times: list[list[float]] = [[] for _ in fns]
    for _ in range(reps):
        for samples, fn in zip(times, fns):
            samples.append(_timed(fn))
    return [statistics.median(samples) for samples in times]


def _resolve(curve_names: Sequence[str]) -> list[CurveParams]:
    if not curve_names:
        raise ValueError("need at least one curve to benchmark")
    return sorted((curve_from_name(n) for n in curve_names), key=lambda c: c.bits)


def run_bench(
    curve_names: Sequence[str],
    reps: int,
    payload_len: int = DEFAULT_PAYLOAD_LEN,
    rng: RandomSource | None = None,
) -> list[BenchRow]:
    if reps < 3:
        raise ValueError(f"need reps >= 3 for a meaningful median, got {reps}")
    if payload_len < 1:
        raise ValueError("payload must be at least one octet")
    curves = _resolve(curve_names)
    if rng is None:
        rng = SystemRandom()
    payload = rng.read(payload_len)
    rows = []
    for curve in curves:
        # Warm-up pass, discarded; its keypair and ciphertext become the
        # fixed inputs for the timed encrypt/decrypt loops.
        kp = keygen(curve, rng)
        ct = encrypt(payload, kp.Q, curve, rng)
        decrypt(ct, kp.d, curve)
        keygen_s, encrypt_s, decrypt_s = _median_rounds(
            [
                lambda: keygen(curve, rng),
                lambda: encrypt(payload, kp.Q, curve, rng),
                lambda: decrypt(ct, kp.d, curve),
            ],
            reps,
        )
        rows.append(
            BenchRow(
                curve=curve.name,
                bits=curve.bits,
                keygen_s=keygen_s,
                encrypt_s=encrypt_s,
                decrypt_s=decrypt_s,
                reps=reps,
            )
        )
    _warn_on_odd_trends(rows)
    return rows


def run_sig_bench(
    curve_names: Sequence[str],
    reps: int,
    payload_len: int = DEFAULT_PAYLOAD_LEN,
    rng: RandomSource | None = None,
) -> list[SigBenchRow]:
    """Auxiliary sign/verify timings over the same ladder."""
    if reps < 3:
        raise ValueError(f"need reps >= 3 for a meaningful median, got {reps}")
    if payload_len < 1:
        raise ValueError("payload must be at least one octet")
    curves = _resolve(curve_names)
    if rng is None:
        rng = SystemRandom()
    payload = rng.read(payload_len)
    rows = []
    for curve in curves:
        kp = keygen(curve, rng)
        sig = ecdsa.sign(payload, kp.d, curve, rng)
        ecdsa.verify(sig, payload, kp.Q, curve)
        sign_s, verify_s = _median_rounds(
            [
                lambda: ecdsa.sign(payload, kp.d, curve, rng),
                lambda: ecdsa.verify(sig, payload, kp.Q, curve),
            ],
            reps,
        )
        rows.append(
            SigBenchRow(
                curve=curve.name,
                bits=curve.bits,
                sign_s=sign_s,
                verify_s=verify_s,
                reps=reps,
            )
        )
    return rows


def trend_inversions(rows: Sequence[BenchRow]) -> dict[str, int]:
    """Count adjacent-row decreases per timing column (rows sorted by bits)."""
    counts = {"keygen_s": 0, "encrypt_s": 0, "decrypt_s": 0}
    for prev, cur in zip(rows, rows[1:]):
        for column in counts:
            if getattr(cur, column) < getattr(prev, column):
                counts[column] += 1
    return counts


def _warn_on_odd_trends(rows: Sequence[BenchRow]) -> None:
    # Soft checks: timing is noisy, so surprises warn instead of failing.
    for row in rows:
        if row.keygen_s > row.encrypt_s or row.keygen_s > row.decrypt_s:
            log.warning(
                "%s: key generation (%.6fs) measured slower than "
                "encrypt (%.6fs) or decrypt (%.6fs)",
                row.curve,
                row.keygen_s,
                row.encrypt_s,
                row.decrypt_s,
            )
    for column, count in trend_inversions(rows).items():
        if count:
            log.warning(
                "%s is not nondecreasing with curve size (%d inversion(s))",
                column,
                count,
            )


def emit_csv(rows: Sequence[BenchRow]) -> str:
    if not rows:
        raise ValueError("no rows to emit")
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.curve},{r.bits},{r.keygen_s:.6f},{r.encrypt_s:.6f},"
            f"{r.decrypt_s:.6f},{r.reps}"
        )
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[BenchRow]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_HEADER.split(","):
        raise ValueError(f"unexpected CSV header: {reader.fieldnames}")
    return [
        BenchRow(
            curve=rec["curve"],
            bits=int(rec["bits"]),
            keygen_s=float(rec["keygen_s"]),
            encrypt_s=float(rec["encrypt_s"]),
            decrypt_s=float(rec["decrypt_s"]),
            reps=int(rec["reps"]),
        )
        for rec in reader
    ]


def emit_sig_csv(rows: Sequence[SigBenchRow]) -> str:
    if not rows:
        raise ValueError("no rows to emit")
    lines = [SIG_CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.curve},{r.bits},{r.sign_s:.6f},{r.verify_s:.6f},{r.reps}"
        )
    return "\n".join(lines) + "\n"


def emit_plot_data(rows: Sequence[BenchRow]) -> str:
    """One "bits encrypt_s" line per curve, for external plotting tools."""
    if not rows:
        raise ValueError("no rows to emit")
    return "".join(f"{r.bits} {r.encrypt_s:.6f}\n" for r in rows)


def render_figure(rows: Sequence[BenchRow], path: str) -> None:
    """Render the cost-versus-curve-size figure to an image file."""
    if not rows:
        raise ValueError("no rows to plot")
    from matplotlib.figure import Figure

    bits = [r.bits for r in rows]
    fig = Figure(figsize=(6.4, 4.2))
    ax = fig.add_subplot(1, 1, 1)
    ax.plot(bits, [r.encrypt_s for r in rows], "o-", label="encrypt")
    ax.plot(bits, [r.decrypt_s for r in rows], "s-", label="decrypt")
    ax.plot(bits, [r.keygen_s for r in rows], "^-", label="key generation")
    ax.set_xlabel("curve size (bits)")
    ax.set_ylabel("median time (s)")
    ax.set_title("Data link layer encryption cost")
    ax.set_xticks(bits)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.savefig(path, bbox_inches="tight")
