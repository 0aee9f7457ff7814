"""Exact (d1,...,dl)-defective coloring workbench."""

from ._core import (  # noqa: F401
    Gadget,
    GadgetRejected,
    ForcingGadget,
    Graph,
    GraphError,
    ParseError,
    PreconditionError,
    ReductionOutput,
    brute_force_solve,
    build_E_ab,
    degeneracy,
    derive_forcing_gadget,
    find_minimal_with_2vertex,
    forced_states,
    gadget_E_family,
    gadget_g4,
    gadget_g5,
    gadget_g7,
    gadget_H,
    girth,
    is_planar,
    mad,
    minimize_noncolorable,
    n3,
    named,
    reduce_3col,
    reduce_11,
    reduce_k0,
    reduce_kj,
    replay,
    solve,
    verify_manifest,
)
