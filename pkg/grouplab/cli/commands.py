# grouplab/cli/commands.py

from argparse import Namespace
from typing import Tuple

from grouplab.cli.dependencies import (
    get_context, get_group, get_pair, get_prime, get_primes, get_subgroup,
)
from grouplab.config import get_settings
from grouplab.models.schemas import AlgebraSummary, Listing, VerificationRun
from grouplab.services.algebra_service import algebra_service
from grouplab.services.harness_service import harness_service
from grouplab.services.identity_service import identity_service
from grouplab.services.involution_service import involution_service
from grouplab.services.structure_service import FINITE_GI_NOTE, structure_service

# Every handler returns (document, exit code).
Result = Tuple[str, int]


def _run_result(run: VerificationRun, fmt: str) -> Result:
    ok = run.summary.disagreements == 0 and run.summary.errors == 0
    return harness_service.emit_report(run, fmt), 0 if ok else 1


# Verification runs
def verify_lemma5(args: Namespace) -> Result:
    run = harness_service.run_lemma5_verification(get_primes(args), args.max_order)
    return _run_result(run, args.format)


def verify_lemma8(args: Namespace) -> Result:
    run = harness_service.run_lemma8_verification(get_primes(args), args.max_order)
    return _run_result(run, args.format)


def verify_axioms(args: Namespace) -> Result:
    run = harness_service.run_axiom_check(get_primes(args), args.max_order, args.samples)
    return _run_result(run, args.format)


def pipeline(args: Namespace) -> Result:
    report = harness_service.run_modular_pipeline(
        args.group, get_prime(args), args.involution, args.orientation
    )
    record = report.record
    failed = record is not None and (record.agreement is False or record.error)
    return harness_service.emit_document(report, args.format), 1 if failed else 0


# Single-group commands
def classify(args: Namespace) -> Result:
    G = get_group(args)
    pair, _, _ = get_pair(args, G)
    if args.modulo_p:
        report = structure_service.check_theorem2(G, pair, get_prime(args))
    else:
        report = structure_service.check_theorem1(G, pair)
    return harness_service.emit_document(report, args.format), 0


def involutions(args: Namespace) -> Result:
    G = get_group(args)
    found = involution_service.enumerate_involutions(G)
    listing = Listing(
        group=G.name, order=G.order, kind="involutions",
        count=len(found), items=[list(tau.image) for tau in found],
    )
    return harness_service.emit_document(listing, args.format), 0


def orientations(args: Namespace) -> Result:
    G = get_group(args)
    found = involution_service.enumerate_orientations(G, include_trivial=args.include_trivial)
    listing = Listing(
        group=G.name, order=G.order, kind="orientation kernels",
        count=len(found), items=[list(o.kernel.members) for o in found],
    )
    return harness_service.emit_document(listing, args.format), 0


def units(args: Namespace) -> Result:
    ctx = get_context(args)
    found = identity_service.enumerate_units(ctx, symmetric_only=args.symmetric)
    listing = Listing(
        group=ctx.group.name, order=ctx.n, kind="symmetric units" if args.symmetric else "units",
        p=ctx.p, count=len(found), items=[list(u.coeffs) for u in found.units],
        notes=[FINITE_GI_NOTE],
    )
    return harness_service.emit_document(listing, args.format), 0


def identity(args: Namespace) -> Result:
    ctx = get_context(args)
    word = identity_service.parse_word(args.word)
    found = identity_service.enumerate_units(ctx, symmetric_only=args.symmetric)
    result = identity_service.satisfies_identity(found, word)
    return harness_service.emit_document(result, args.format), 0


# Algebra queries
def algebra(args: Namespace) -> Result:
    ctx = get_context(args)
    summary = AlgebraSummary(group=ctx.group.name, p=ctx.p)
    query = args.query

    if query == "symmetric-dim":
        summary.dim = len(algebra_service.symmetric_basis(ctx))
    elif query == "symmetric-commutes":
        witness = algebra_service.noncommuting_symmetric_pair(ctx)
        summary.flags["symmetric_commutative"] = witness is None
        if witness is not None:
            summary.witnesses = [list(w.coeffs) for w in witness]
    elif query == "symmetric-central":
        summary.flags["symmetric_central"] = algebra_service.symmetric_is_central(ctx)
    elif query == "idempotents":
        central, witness = algebra_service.symmetric_idempotents_central(ctx)
        summary.flags["symmetric_idempotents_central"] = central
        if witness is not None:
            summary.witnesses = [list(witness.coeffs)]
    elif query == "delta":
        ideal = algebra_service.delta_ideal(ctx, get_subgroup(args, ctx))
        summary.dim = ideal.dim
        if args.nilpotency:
            summary.nilpotency_index = algebra_service.nilpotency_index(ideal, get_settings().nilpotency_bound)
    summary.flags["regular"] = algebra_service.is_regular(ctx)
    return harness_service.emit_document(summary, args.format), 0
