"""FastAPI service wrapping the oqkit library.

Domain errors map to structured JSON: invalid input is 400, a computation
rejected outside its validated range (e.g. the double-KL tilting path on
non-regular weights) is 409.  A long-running process keeps the KL and
character memo tables warm across requests.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import chars, oq, sl2
from ..kl import engine_for
from ..rootdata import l_adic_decompose, parse_type, weight_predicates
from ..weyl import affine_weyl, finite_weyl
from . import models


class RejectedRange(Exception):
    pass


def create_app() -> FastAPI:
    app = FastAPI(title="oqkit service", version="0.1.0")

    @app.exception_handler(ValueError)
    async def _value_error(request, exc):
        return JSONResponse(
            status_code=400, content={"code": "invalid_input", "message": str(exc)}
        )

    @app.exception_handler(oq.RegularityError)
    async def _regularity_error(request, exc):
        return JSONResponse(
            status_code=409, content={"code": "rejected_range", "message": str(exc)}
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/v1/decompose", response_model=models.DecomposeResponse)
    def decompose(req: models.DecomposeRequest):
        datum = parse_type(req.type)
        rec = oq.decompose(req.kind, datum, tuple(req.weight), req.l)
        return models.DecomposeResponse(
            kind=rec.kind,
            classical_weight=list(rec.classical_weight),
            finite_weight=list(rec.finite_weight),
            l=rec.l,
        )

    def _table_response(datum, table, ref):
        payload = oq.table_to_json(datum, table, ref=ref)
        return models.TableResponse(
            subject=payload["subject"],
            complete=payload["complete"],
            entries=[models.TableEntry(**e) for e in payload["entries"]],
        )

    @app.post("/v1/verma-factors", response_model=models.TableResponse)
    def verma_factors(req: models.FactorsRequest):
        datum = parse_type(req.type)
        lam = tuple(req.weight)
        table = oq.quantum_verma_factor_table(datum, lam, req.l)
        return _table_response(datum, table, lam)

    @app.post("/v1/tilting-factors", response_model=models.TableResponse)
    def tilting_factors(req: models.FactorsRequest):
        datum = parse_type(req.type)
        lam = tuple(req.weight)
        if req.mode == "kl":
            table = oq.tilting_verma_table_kl(datum, lam, req.l)
        else:
            table = oq.tilting_verma_table(datum, lam, req.l)
        return _table_response(datum, table, lam)

    @app.post("/v1/projective-factors", response_model=models.TableResponse)
    def projective_factors(req: models.FactorsRequest):
        datum = parse_type(req.type)
        lam = tuple(req.weight)
        table = oq.projective_verma_table(datum, lam, req.l)
        return _table_response(datum, table, None)

    @app.post("/v1/simple-char", response_model=models.CharResponse)
    def simple_char(req: models.SimpleCharRequest):
        datum = parse_type(req.type)
        lam = tuple(req.weight)
        window = chars.Window.below(lam, req.depth)
        ch = chars.simple_character(datum, lam, req.l, window)
        ordered = chars.sort_weights(datum, lam, ch.support())
        return models.CharResponse(
            window_tops=[list(t) for t in ch.window.tops],
            window_depth=ch.window.depth,
            values=[models.CharValue(wt=list(w), c=ch.values[w]) for w in ordered],
        )

    def _kl_group(req: models.KLRequest):
        datum = parse_type(req.type)
        words = f"{req.y} {req.w}".split()
        affine = req.affine if req.affine is not None else "0" in words
        return affine_weyl(datum) if affine else finite_weyl(datum)

    @app.post("/v1/kl", response_model=models.KLResponse)
    def kl(req: models.KLRequest):
        group = _kl_group(req)
        engine = engine_for(group)
        poly = engine.polynomial(group.parse_word(req.y), group.parse_word(req.w))
        return models.KLResponse(coeffs=poly.to_list(), text=str(poly))

    @app.post("/v1/inverse-kl", response_model=models.KLResponse)
    def inverse_kl(req: models.KLRequest):
        group = _kl_group(req)
        engine = engine_for(group)
        poly = engine.inverse_polynomial(group.parse_word(req.y), group.parse_word(req.w))
        return models.KLResponse(coeffs=poly.to_list(), text=str(poly))

    @app.post("/v1/predicates", response_model=models.PredicatesResponse)
    def predicates(req: models.PredicatesRequest):
        datum = parse_type(req.type)
        lam = tuple(req.weight)
        wp = weight_predicates(datum, lam, req.l)
        sp = oq.structural_predicates(datum, lam, req.l)
        return models.PredicatesResponse(
            dominant=wp.dominant,
            antidominant=wp.antidominant,
            regular=wp.regular,
            l_regular=wp.l_regular,
            special=wp.special,
            steinberg=wp.steinberg,
            verma_simple=sp.verma_simple,
            verma_projective=sp.verma_projective,
            proj_injective=sp.proj_injective,
        )

    @app.post("/v1/special-block", response_model=models.SpecialBlockResponse)
    def special_block(req: models.SpecialBlockRequest):
        datum = parse_type(req.type)
        info = oq.special_block(datum, tuple(req.weight), req.l)
        g_of_f = (
            list(oq.g_map(datum, info.f_image, req.l)) if info.is_special else None
        )
        return models.SpecialBlockResponse(
            is_special=info.is_special,
            f_image=list(info.f_image) if info.f_image is not None else None,
            g_of_f=g_of_f,
        )

    @app.post("/v1/generic-mult", response_model=models.GenericMultResponse)
    def generic_mult(req: models.GenericMultRequest):
        datum = parse_type(req.type)
        value = oq.generic_verma_simple_multiplicity(
            datum, tuple(req.weight), tuple(req.mu)
        )
        return models.GenericMultResponse(value=value)

    return app


app = create_app()
