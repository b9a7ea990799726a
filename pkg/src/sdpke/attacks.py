"""Key-recovery procedures: everything an eavesdropper can do with a transcript.

Four procedures, each consuming only public data (platform parameters and
the exchanged values), each returning an AttackOutcome:

* ``dimension_attack`` — works whenever the carrier embeds linearly in a
  Z_p vector space (group ring, GL, and the additive platform).  It grows
  the sequence a_1, a_2, ... until the first linear dependence, writes the
  observed value A as a combination of the independent prefix, and
  reassembles the shared key from public terms by linearity of phi.
* ``make_telescoping_attack`` — specific to the additive platform.  The
  telescoping identity pins down phi^x(g) exactly (additive carriers are
  groups, so the solution is unique), and a Cayley-Hamilton argument turns
  key recovery into one small linear solve.
* ``tropical_binsearch_attack`` — the exchanged sequence is entrywise
  non-increasing, so an admissible exponent is found by binary search.
* ``mobs_solution_count`` — brute-force census of how many Y satisfy the
  telescoping equality on the OR/AND platform; evidence for why the
  telescoping route fails there.

``mr_message_recovery`` turns the dimension attack into ciphertext-only
message recovery for the encryption scheme.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import matrices as mx
from .errors import NotApplicableError, ParameterError, SizeCapError
from .holomorph import Platform, sdp_exp, sequence_iter
from .linalg import EchelonSpan, solve_mod
from .matrices import Matrix
from .protocol import Ciphertext, Transcript

MOBS_ENUMERATION_CAP = 1 << 24
_ENUM_CHUNK = 1 << 16


@dataclass
class WorkCounters:
    sequence_terms_generated: int = 0
    rank: int = 0
    linear_solves: int = 0
    search_steps: int = 0
    solution_count: int = 0

    def to_obj(self) -> dict:
        return {
            "sequence_terms_generated": self.sequence_terms_generated,
            "rank": self.rank,
            "linear_solves": self.linear_solves,
            "search_steps": self.search_steps,
            "solution_count": self.solution_count,
        }


@dataclass
class AttackOutcome:
    success: bool
    recovered_key: Matrix | None = None
    recovered_exponent: int | None = None
    work: WorkCounters = field(default_factory=WorkCounters)
    detail: str = ""


def _verify(recovered: Matrix | None, transcript: Transcript) -> bool:
    """Success means the exact shared key when ground truth is available."""
    if recovered is None:
        return False
    if transcript.shared_key is not None:
        return recovered == transcript.shared_key
    return True


# ---------------------------------------------------------------------------
# dimension attack


@dataclass
class SpanBasis:
    """Maximal linearly independent prefix of the exchange sequence.

    ``indices`` are the exponents i with a_i independent of its
    predecessors (always 1..k here: the first dependence closes the span,
    because a_(m+1) = phi(a_m) ∘ a_1 and both phi and ∘-by-a_1 act linearly
    on the ambient coordinates).
    """

    indices: list[int]
    elements: list[Matrix]
    vectors: list[np.ndarray]
    span: EchelonSpan

    @property
    def rank(self) -> int:
        return len(self.indices)


def build_span_basis(platform: Platform, modulus: int, max_terms: int | None = None) -> SpanBasis:
    """Generate a_1, a_2, ... and stop at the first linearly dependent term."""
    basis = SpanBasis(indices=[], elements=[], vectors=[], span=EchelonSpan(modulus))
    for n, value, _end in sequence_iter(platform):
        v = mx.flatten(value)
        if not basis.span.add(v):
            break
        basis.indices.append(n)
        basis.elements.append(value)
        basis.vectors.append(v)
        if max_terms is not None and n >= max_terms:
            raise ParameterError("sequence did not close within the term limit")
    return basis


def dimension_attack(transcript: Transcript) -> AttackOutcome:
    """Recover the shared key from a transcript via linear algebra over Z_p.

    Writes A = sum eta_i a_i over the independent prefix, then uses that
    phi^y(a_i) ∘ a_y = a_(i+y) = phi^i(a_y) ∘ a_i to re-express the key
    through public quantities only:

    * multiplicative carriers:  K = sum_i eta_i phi^i(B) a_i
    * additive carrier:         K = sum_i eta_i phi^i(B) + A + (1 - sum_i eta_i) B

    The additive form carries the affine correction (1 - sum eta_i) B; it
    reduces to the sum of phi^i(B) + a_i whenever the coefficients happen to
    sum to one, but is exact for every solution eta.
    """
    platform = transcript.build_platform()
    try:
        modulus = platform.g.ring.modulus
        mx.flat_dim(platform.g.ring, 1, 1)
    except (AttributeError, ParameterError) as exc:
        raise NotApplicableError(
            f"platform {platform.name!r} has no Z_p-linear coordinates"
        ) from exc

    work = WorkCounters()
    basis = build_span_basis(platform, modulus)
    work.sequence_terms_generated = basis.rank + 1
    work.rank = basis.rank

    a_obs = transcript.alice_value
    b_obs = transcript.bob_value
    coords = np.stack(basis.vectors, axis=1)
    eta = solve_mod(coords, mx.flatten(a_obs), modulus)
    work.linear_solves = 1
    if eta is None:
        raise AssertionError("observed value outside the closed span; sequence logic broken")

    additive = platform.op_kind == "add"
    phi_i_of_b = b_obs  # phi^0(B); basis indices run 1..k, one application per step
    acc: Matrix | None = None
    for pos in range(basis.rank):
        phi_i_of_b = platform.phi(phi_i_of_b)
        c = int(eta[pos])
        if c == 0:
            continue
        term = phi_i_of_b if additive else phi_i_of_b @ basis.elements[pos]
        term = term.scale(c)
        acc = term if acc is None else acc + term
    if acc is None:
        acc = mx.zeros(platform.g.ring, *platform.g.shape)
    if additive:
        eta_sum = int(np.sum(eta)) % modulus
        key = acc + a_obs + b_obs.scale((1 - eta_sum) % modulus)
    else:
        key = acc

    return AttackOutcome(
        success=_verify(key, transcript),
        recovered_key=key,
        work=work,
    )


# ---------------------------------------------------------------------------
# telescoping attack on the additive platform


def _power_list(m: Matrix, count: int) -> list[Matrix]:
    """[I, M, M^2, ..., M^(count-1)]."""
    out = [mx.identity(m.ring, m.rows)]
    for _ in range(count - 1):
        out.append(out[-1] @ m)
    return out


def _build_l_matrix(h1_pows: list[Matrix], y: Matrix, h2_pows: list[Matrix]) -> np.ndarray:
    """Columns vec(H1^i Y H2^j), i and j ranging over the given power lists."""
    cols = []
    for h1i in h1_pows:
        left = h1i @ y
        for h2j in h2_pows:
            cols.append(mx.vec(left @ h2j))
    return np.stack(cols, axis=1)


def make_telescoping_attack(transcript: Transcript) -> AttackOutcome:
    """Key recovery on the additive platform from one transcript.

    D = H1 A H2 + M - A equals H1^x M H2^x exactly (the telescoping
    identity, and additive carriers leave no ambiguity).  Cayley-Hamilton
    bounds H1^x and H2^x by polynomials of degree < n in H1 and H2, so
    vec(D) is a combination of the n^2 columns vec(H1^i M H2^j); solving
    for any coefficient vector t and replaying it on B gives
    H1^x B H2^x, hence the key H1^x B H2^x + A.

    The degree-n column set is attempted first and escalated to degree n^2
    if the system were ever inconsistent.
    """
    platform = transcript.build_platform()
    if platform.name != "make":
        raise NotApplicableError("telescoping solve applies to the additive platform only")
    params = platform.params
    p = params.prime
    n = params.size
    h1, h2, m = params.left_factor, params.right_factor, params.base
    a_obs, b_obs = transcript.alice_value, transcript.bob_value

    work = WorkCounters()
    d = (h1 @ a_obs @ h2) + m - a_obs

    for degree in (n, n * n):
        h1_pows = _power_list(h1, degree)
        h2_pows = _power_list(h2, degree)
        l_m = _build_l_matrix(h1_pows, m, h2_pows)
        work.linear_solves += 1
        t = solve_mod(l_m, mx.vec(d), p)
        if t is not None:
            break
    else:
        raise AssertionError("telescoping system inconsistent at full degree; identity violated")

    l_b = _build_l_matrix(h1_pows, b_obs, h2_pows)
    phi_x_of_b = mx.unvec(platform.g.ring, (l_b @ t) % p, n)
    key = phi_x_of_b + a_obs

    return AttackOutcome(
        success=_verify(key, transcript),
        recovered_key=key,
        work=work,
    )


def telescoped_conjugate(transcript: Transcript) -> Matrix:
    """The public quantity H1 A H2 + M - A (equals phi^x(g); used by tests)."""
    platform = transcript.build_platform()
    if platform.name != "make":
        raise NotApplicableError("defined for the additive platform only")
    params = platform.params
    return (params.left_factor @ transcript.alice_value @ params.right_factor) + params.base - transcript.alice_value


# ---------------------------------------------------------------------------
# tropical exponent recovery by binary search


def _compare_entrywise(a: Matrix, b: Matrix) -> tuple[bool, bool]:
    """(a <= b everywhere, a >= b everywhere) under the entrywise order."""
    return bool(np.all(a.data <= b.data)), bool(np.all(a.data >= b.data))


def tropical_binsearch_attack(transcript: Transcript, x_max: int = 1 << 20) -> AttackOutcome:
    """Recover an admissible exponent for A, then the key, by binary search.

    The sequence is entrywise non-increasing (each step mins the previous
    term against more material), so "a_n <= A" is a monotone predicate and
    its first true index n* satisfies a_n* = A whenever A = a_x with
    x <= x_max.  Any admissible exponent works: a_x' = a_x forces
    a_(x'+y) = a_(x+y), so the derived key is the true key.

    Probes that compare incomparable to A cannot occur if A is on the
    sequence; they are handled anyway by an expanding scan (offsets 1, 2,
    4, ...) around the failed midpoint, capped at 2*log2(x_max) extra
    probes before giving up.
    """
    platform = transcript.build_platform()
    if platform.name != "tropical":
        raise NotApplicableError("binary-search exponent recovery applies to the tropical platform only")
    a_obs, b_obs = transcript.alice_value, transcript.bob_value

    work = WorkCounters()
    fallback_budget = 2 * max(1, x_max.bit_length())
    probed: dict[int, Matrix] = {}

    def term(n: int) -> Matrix:
        if n not in probed:
            probed[n] = sdp_exp(platform, n).value
        return probed[n]

    def probe(n: int) -> tuple[bool, bool]:
        work.search_steps += 1
        return _compare_entrywise(term(n), a_obs)

    def comparable_probe(mid: int, lo: int, hi: int) -> tuple[int, bool] | None:
        """Probe mid; on an incomparable result scan mid +- 1, 2, 4, ..."""
        nonlocal fallback_budget
        le, ge = probe(mid)
        if le or ge:
            return mid, le
        delta = 1
        while fallback_budget > 0:
            for cand in (mid - delta, mid + delta):
                if lo <= cand <= hi and fallback_budget > 0:
                    fallback_budget -= 1
                    le, ge = probe(cand)
                    if le or ge:
                        return cand, le
            delta <<= 1
            if mid - delta < lo and mid + delta > hi:
                break
        return None

    lo, hi = 1, x_max
    while lo < hi:
        hit = comparable_probe((lo + hi) // 2, lo, hi)
        if hit is None:
            return AttackOutcome(
                success=False, work=work, detail="incomparable probes exhausted the fallback budget"
            )
        pos, le = hit
        if le:
            hi = pos
        else:
            lo = pos + 1

    # search_steps counts search probes; the admissibility check below reuses
    # the cached term when the search already evaluated it
    candidate = lo
    if term(candidate) != a_obs:
        return AttackOutcome(
            success=False,
            recovered_exponent=None,
            work=work,
            detail=f"no admissible exponent <= {x_max}",
        )

    phi_x = platform.phi.power(candidate)
    key = platform.op(phi_x(b_obs), a_obs)
    return AttackOutcome(
        success=_verify(key, transcript),
        recovered_key=key,
        recovered_exponent=candidate,
        work=work,
    )


# ---------------------------------------------------------------------------
# solution counting for the OR/AND platform


def mobs_solution_count(
    platform: Platform,
    observed: Matrix,
    true_exponent: int | None = None,
    cap: int = MOBS_ENUMERATION_CAP,
) -> AttackOutcome:
    """Count every Y with h(A) M = Y A over the OR/AND matrix semiring.

    Exhaustive enumeration of all 2^(n^2 k) candidate matrices, refused
    above ``cap``.  phi^x(M) always satisfies the equation (telescoping
    identity), so the count is at least 1; when ``true_exponent`` is given,
    membership of the true phi^x(M) is checked explicitly and folded into
    ``success``.
    """
    if platform.name != "mobs":
        raise NotApplicableError("solution counting applies to the OR/AND platform only")
    n = platform.g.rows
    k = platform.g.ring.length
    total_bits = n * n * k
    if (1 << total_bits) > cap:
        raise SizeCapError(
            f"{n}x{n} matrices of {k}-bit strings need 2^{total_bits} candidates (cap {cap})"
        )

    target = np.asarray((platform.phi(observed) @ platform.g).data, dtype=np.int64)
    a_data = np.asarray(observed.data, dtype=np.int64)
    shifts = (np.arange(n * n) * k).reshape(n, n)
    entry_mask = (1 << k) - 1

    count = 0
    total = 1 << total_bits
    for start in range(0, total, _ENUM_CHUNK):
        idx = np.arange(start, min(start + _ENUM_CHUNK, total), dtype=np.int64)
        cands = (idx[:, None, None] >> shifts[None, :, :]) & entry_mask
        prods = np.bitwise_or.reduce(cands[:, :, :, None] & a_data[None, None, :, :], axis=2)
        count += int(np.sum(np.all(prods == target[None, :, :], axis=(1, 2))))

    work = WorkCounters(solution_count=count)
    success = count >= 1
    if true_exponent is not None:
        y_true = platform.phi.power(true_exponent)(platform.g)
        success = success and np.array_equal(np.asarray((y_true @ observed).data, dtype=np.int64), target)
    return AttackOutcome(success=success, work=work)


# ---------------------------------------------------------------------------
# message recovery against the encryption scheme


def mr_message_recovery(platform: Platform, public_key: Matrix, ct: Ciphertext) -> Matrix:
    """Recover the plaintext from (public key, ciphertext) alone.

    The blinding factor K = phi^n(c1) a is exactly a shared key for the
    pair of public values (a, c1), so the dimension attack recovers it and
    K^-1 c2 is the message.
    """
    synthetic = Transcript(params=platform.params, alice_value=public_key, bob_value=ct.c1)
    outcome = dimension_attack(synthetic)
    if outcome.recovered_key is None:
        raise NotApplicableError("dimension attack did not produce a key")
    return mx.inverse(outcome.recovered_key) @ ct.c2
