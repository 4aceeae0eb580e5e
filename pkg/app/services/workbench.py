"""
Command layer shared by the CLI and the API: each function takes plain
arguments, runs the service and returns a report schema.
"""
import logging
from typing import Mapping, Optional, Union

from app.core.errors import InputError
from app.schemas.reports import (
    InvariantFactors,
    NormalizeReport,
    ProductReport,
    StildeReport,
    WittReport,
)
from app.services.expression import Target, normalize, parse_units
from app.services.expression.parser import unit_value
from app.services.gpcomplex.product import star_product
from app.services.gpcomplex.stilde import compare_models, stilde_presented
from app.services.gpcomplex.symbols import SymbolSum, d_map, t_map
from app.services.groupring import FieldSpec
from app.services.quadform import DiagForm, form_invariants, witt_class

logger = logging.getLogger(__name__)


def normalize_expression(
    expression: str,
    field: str = "Q",
    bindings: Optional[Mapping[str, Union[int, str]]] = None,
    check_model: bool = False,
) -> NormalizeReport:
    fld = FieldSpec.parse(field)
    evaluation = normalize(expression, fld, bindings)
    return NormalizeReport(
        expression=expression,
        field=fld.label,
        target=evaluation.target.value,
        result=evaluation.to_dict(check_model=check_model),
    )


def witt_invariants(form: str, field: str = "Q") -> WittReport:
    fld = FieldSpec.parse(field)
    entries = [unit_value(u) for u in parse_units(form)]
    diag = DiagForm.of(fld, entries)
    return WittReport(
        form=diag.render(),
        field=fld.label,
        invariants=form_invariants(diag).to_dict(),
        witt_class=witt_class(diag).to_dict(),
    )


def stilde_report(p: int, n: int, compare: bool = False) -> StildeReport:
    """Presented model of S̃(F_p^n); with compare, also the direct pipeline."""
    if compare:
        comparison = compare_models(p, n)
        model, direct = comparison.presented, comparison.direct
        diagnostics = {
            "direct_invariant_factors": direct.group.invariant_factors,
            "direct_tuples": direct.tuples,
            "ker_vs_im": direct.ker_vs_im.invariant_factors,
            "agree": comparison.agree,
        }
        timings = {**model.timings, **{f"direct_{k}": v for k, v in direct.timings.items()}}
    else:
        model = stilde_presented(p, n)
        diagnostics = {}
        timings = dict(model.timings)
    description = model.describe()
    return StildeReport(
        p=p,
        n=n,
        generators=model.generators,
        relation_matrix_shape=description["relation_matrix_shape"],
        invariant_factors=InvariantFactors(**model.group.invariant_factors),
        diagnostics=diagnostics,
        timings={k: round(v, 3) for k, v in timings.items()},
    )


def _symbols(expression: str, fld: FieldSpec) -> SymbolSum:
    evaluation = normalize(expression, fld)
    if evaluation.target != Target.STILDE:
        raise InputError(f"'{expression}' is not a combination of [[...]] symbols")
    return evaluation.value


def product_report(left: str, right: str, field: str = "Fp:7") -> ProductReport:
    """x∗y by the closed formula and, over F_p, through generator cycles."""
    fld = FieldSpec.parse(field)
    x, y = _symbols(left, fld), _symbols(right, fld)
    result = star_product(x, y)
    product = result.formula
    d_ok = d_map(product) == d_map(x) * d_map(y)
    t_ok = (t_map(product) - t_map(x) * t_map(y)).is_zero()
    logger.info(f"Workbench: {x.render()} ∗ {y.render()} = {product.render()}")
    return ProductReport(
        left=x.render(),
        right=y.render(),
        field=fld.label,
        formula=product.render(),
        chain=None if result.chain is None else result.chain.render(),
        agree=result.agree,
        d_multiplicative=d_ok,
        t_multiplicative=t_ok,
    )
