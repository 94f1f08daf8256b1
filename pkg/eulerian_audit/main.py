import logging
import time
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from fastapi import Body, FastAPI, File, Form, HTTPException, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from . import __version__
from .bfile import CATALOG, crosscheck, parse_bfile
from .cli import FAMILIES, family_value, sequence_text
from .config import Settings
from .errors import (
    BFileParseError,
    EulerianAuditError,
    UnknownFamilyError,
    UnknownIdentityError,
)
from .exact_arith import format_rat, parse_rat
from .gen_eulerian import FamilySource, IdentityAuditor
from .identity_registry import IDENTITY_IDS, apply_overrides, registry_map, resolve_ids
from .padic_lab import check_functional_equation, witt_table
from .report_generator import ReportGenerator

logger = logging.getLogger(__name__)

app = FastAPI(title="Eulerian Identity Audit")

# CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

def get_settings() -> Settings:
    """EULERIAN_AUDIT_* settings, read per request; a bad value fails that request with a 400."""
    return Settings.from_env()


def _status_for(error: EulerianAuditError) -> int:
    if isinstance(error, (UnknownIdentityError, UnknownFamilyError)):
        return 404
    return 400


@app.get("/")
async def root():
    """API information endpoint"""
    return {
        "message": "Eulerian Identity Audit API",
        "version": __version__,
        "identities": list(IDENTITY_IDS),
        "families": list(FAMILIES),
        "sequences": list(CATALOG),
    }


@app.get("/registry")
async def get_registry():
    """Identity registry with loci, quotes and expectations"""
    descriptors = registry_map()
    return JSONResponse(
        content=[descriptors[i].model_dump(mode="json") for i in sorted(descriptors)]
    )


@app.post("/audit")
async def run_audit(request_data: Dict[str, Any] = Body(...)):
    """Audit identities; body: {identity, n_max, format, source, expect, omit_header}"""
    try:
        settings = get_settings()
        selection = request_data.get("identity", "all")
        n_max = request_data.get("n_max", settings.n_max)
        output_format = request_data.get("format", "json")
        source = request_data.get("source", FamilySource.RECURRENCE.value)
        overrides: List[str] = request_data.get("expect") or []

        if not isinstance(n_max, int) or n_max < 0:
            raise HTTPException(status_code=400, detail="n_max must be a nonnegative integer")
        if output_format not in ("json", "csv"):
            raise HTTPException(status_code=400, detail="format must be 'json' or 'csv'")

        registry = apply_overrides(overrides)
        ids = resolve_ids(selection, registry)
        auditor = IdentityAuditor(registry, source=FamilySource(source), workers=settings.workers)

        started = datetime.now(timezone.utc)
        clock = time.perf_counter()
        verdicts = auditor.audit(ids, n_max)
        generator = ReportGenerator()
        report = generator.generate(verdicts, registry, ids, started, time.perf_counter() - clock)

        if output_format == "csv":
            return PlainTextResponse(generator.to_csv(report), media_type="text/csv")
        exclude = {"header"} if request_data.get("omit_header") else None
        return JSONResponse(content=report.model_dump(mode="json", by_alias=True, exclude=exclude))

    except HTTPException:
        raise
    except EulerianAuditError as e:
        raise HTTPException(status_code=_status_for(e), detail=str(e))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.exception("audit request failed")
        raise HTTPException(status_code=500, detail=f"Error running audit: {str(e)}")


@app.get("/seq/{name}")
async def get_sequence(name: str, n_max: int = 10, a: Optional[str] = None, k: Optional[int] = None, convention: str = "S"):
    """Family members for n = 0..n_max as exact text"""
    try:
        if n_max < 0:
            raise HTTPException(status_code=400, detail="n_max must be nonnegative")
        point = parse_rat(a) if a is not None else None
        values = [family_value(name, n, point, k, convention) for n in range(n_max + 1)]
        return {
            "name": name,
            "n_max": n_max,
            "values": values,
            "text": sequence_text(name, n_max, point, k, convention),
        }
    except HTTPException:
        raise
    except EulerianAuditError as e:
        raise HTTPException(status_code=_status_for(e), detail=str(e))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.exception("sequence request failed")
        raise HTTPException(status_code=500, detail=f"Error computing sequence: {str(e)}")


@app.get("/poly/{family}")
async def get_poly(family: str, n: int, a: Optional[str] = None, k: Optional[int] = None, convention: str = "S"):
    """One family member as exact text"""
    try:
        point = parse_rat(a) if a is not None else None
        return {"family": family, "n": n, "value": family_value(family, n, point, k, convention)}
    except EulerianAuditError as e:
        raise HTTPException(status_code=_status_for(e), detail=str(e))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.exception("poly request failed")
        raise HTTPException(status_code=500, detail=f"Error computing polynomial: {str(e)}")


@app.get("/padic")
async def get_padic(p: int, levels: int, n: int = 1):
    """Witt table rows and the functional-equation residual at the top level"""
    try:
        settings = get_settings()
        rows = witt_table(n, p, levels, cap=settings.padic_cap)
        residual, valuation = check_functional_equation(n, p, levels, settings.padic_cap)
        return {
            "p": p,
            "n": n,
            "rows": [
                {
                    "N": row.level,
                    "partial_sum": format_rat(row.partial_sum),
                    "gap_valuation": row.valuation_of_gap.to_text(),
                    "residual_valuation": row.residual_valuation.to_text(),
                }
                for row in rows
            ],
            "residual": format_rat(residual),
            "residual_valuation": valuation.to_text(),
        }
    except EulerianAuditError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.exception("padic request failed")
        raise HTTPException(status_code=500, detail=f"Error computing Witt table: {str(e)}")


@app.post("/crosscheck")
async def post_crosscheck(name: str = Form(...), offset: int = Form(0), file: UploadFile = File(...)):
    """Cross-check an uploaded b-file against a computed integer sequence"""
    try:
        if name not in CATALOG:
            raise HTTPException(status_code=404, detail=f"unknown sequence {name!r}; available: {', '.join(CATALOG)}")
        contents = await file.read()
        bfile = parse_bfile(contents.decode("utf-8").splitlines())
        result = crosscheck(name, bfile, offset)
        return JSONResponse(content={**result.model_dump(mode="json"), "matched": result.matched})
    except HTTPException:
        raise
    except BFileParseError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except UnicodeDecodeError:
        raise HTTPException(status_code=400, detail="b-file must be UTF-8 text")
    except Exception as e:
        logger.exception("crosscheck request failed")
        raise HTTPException(status_code=500, detail=f"Error cross-checking: {str(e)}")


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
