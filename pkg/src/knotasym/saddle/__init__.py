"""Potential functions, saddle-point systems, V_k polynomials and volumes."""

from .chains import (
    ChainPoleError,
    c_top,
    c_values,
    chain_from_x0,
    crosscheck_apoly_saddle,
    generic_m_samples,
    torus_bridge_check,
    trefoil_check,
    trefoil_saddle,
    x0_closed_form,
)
from .potential import (
    ADMIT_TOL,
    Equation,
    SaddleChain,
    branch_winding,
    critical_im_h,
    cut_distance,
    ell_expression,
    equations,
    gradient_discrepancy,
    h_torus,
    h_trefoil,
    h_twist,
    h_value,
    log_gradient,
    make_chain,
    residuals,
)
from .volume import (
    REFERENCE_TABLE,
    Solution,
    VolumeRow,
    complete_solutions,
    dual_path_check,
    rows_to_csv,
    rows_to_json,
    table_check,
    volume,
    volumes,
    whitehead_limit,
)
from .vpoly import VPoly, VZero, v_values, vpoly, vpoly_identity_suite, vroots, vzeros

__all__ = [name for name in dir() if not name.startswith("_")]
