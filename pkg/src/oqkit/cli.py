"""Command-line front end.

The CLI is a thin client of the FastAPI service: every computation goes
through the service's request/response schemas.  By default the service runs
in-process (no server needed); set OQKIT_SERVER to a base URL to talk to a
running `oqkit serve` instance instead.

Exit codes: 0 success, 1 usage or input error, 2 computation rejected outside
its validated range (e.g. the double-KL tilting path on non-regular weights).

Weights on the command line are comma-separated fundamental coordinates
("4", "-1", "1,0").  Reduced words are space-separated generator indices with
0 the affine generator ("2 1 3 2", "0 1 0").
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click
import httpx

from .kl import CacheError, cache_load, cache_stats, cache_store, engine_for
from .rootdata import parse_type
from .weyl import affine_weyl, finite_weyl


class RejectedRange(Exception):
    pass


class ServiceClient:
    def __init__(self, base_url: str | None = None):
        base_url = base_url or os.environ.get("OQKIT_SERVER")
        if base_url:
            self._client = httpx.Client(base_url=base_url, timeout=120.0)
        else:
            from starlette.testclient import TestClient

            from .service.app import app

            self._client = TestClient(app)

    def post(self, path: str, payload: dict) -> dict:
        resp = self._client.post(path, json=payload)
        if resp.status_code == 200:
            return resp.json()
        body = {}
        try:
            body = resp.json()
        except ValueError:
            pass
        message = body.get("message") or body.get("detail") or resp.text
        if resp.status_code == 409:
            raise RejectedRange(str(message))
        raise click.ClickException(str(message))


def parse_weight(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise click.UsageError(f"cannot parse weight {text!r}") from None


def _entries_map(payload: dict) -> dict[str, int]:
    return {",".join(str(x) for x in e["wt"]): e["mult"] for e in payload["entries"]}


def emit_table_payload(payload: dict, fmt: str) -> None:
    mapping = _entries_map(payload)
    if fmt == "json":
        click.echo(json.dumps(mapping))
    else:
        width = max((len(k) for k in mapping), default=1)
        for k, v in mapping.items():
            click.echo(f"{k:>{width}}  {v}")


@click.group(name="oqkit")
@click.option("--server", default=None, help="Service base URL (default: in-process).")
@click.pass_context
def cli(ctx, server):
    """Combinatorics of category O for quantum groups at odd roots of unity."""
    ctx.obj = {"server": server}


def _client(ctx) -> ServiceClient:
    return ServiceClient(ctx.obj.get("server"))


_type_opt = click.option("--type", "type_", required=True, help="Root-system type, e.g. A1.")
_l_opt = click.option("--l", "l", required=True, type=int, help="Odd order of the root of unity.")
_weight_opt = click.option("--weight", required=True, help="Comma-separated coordinates.")
_format_opt = click.option(
    "--format", "fmt", default="table", type=click.Choice(["table", "json"])
)


@cli.command("decompose")
@_type_opt
@_l_opt
@_weight_opt
@click.option(
    "--kind",
    required=True,
    type=click.Choice(["simple", "projective", "injective", "tilting"]),
)
@_format_opt
@click.pass_context
def decompose_cmd(ctx, type_, l, weight, kind, fmt):
    """Tensor-factor labels (classical, finite) of a module family at weight."""
    payload = _client(ctx).post(
        "/v1/decompose",
        {"type": type_, "kind": kind, "l": l, "weight": parse_weight(weight)},
    )
    if fmt == "json":
        click.echo(json.dumps(payload))
    else:
        click.echo(
            f"kind {payload['kind']}  classical "
            f"{','.join(str(x) for x in payload['classical_weight'])}  finite "
            f"{','.join(str(x) for x in payload['finite_weight'])}  l {payload['l']}"
        )


@cli.command("verma-factors")
@_type_opt
@_l_opt
@_weight_opt
@_format_opt
@click.pass_context
def verma_factors(ctx, type_, l, weight, fmt):
    """Composition factors [Delta_q(weight) : L_q(.)]."""
    payload = _client(ctx).post(
        "/v1/verma-factors", {"type": type_, "l": l, "weight": parse_weight(weight)}
    )
    emit_table_payload(payload, fmt)


@cli.command("tilting-factors")
@_type_opt
@_l_opt
@_weight_opt
@_format_opt
@click.option("--mode", default="general", type=click.Choice(["general", "kl"]))
@click.pass_context
def tilting_factors(ctx, type_, l, weight, fmt, mode):
    """Verma filtration factors (T_q(weight) : Delta_q(.))."""
    payload = _client(ctx).post(
        "/v1/tilting-factors",
        {"type": type_, "l": l, "weight": parse_weight(weight), "mode": mode},
    )
    emit_table_payload(payload, fmt)


@cli.command("projective-factors")
@_type_opt
@_l_opt
@_weight_opt
@_format_opt
@click.pass_context
def projective_factors(ctx, type_, l, weight, fmt):
    """Verma filtration factors (P_q(weight) : Delta_q(.))."""
    payload = _client(ctx).post(
        "/v1/projective-factors", {"type": type_, "l": l, "weight": parse_weight(weight)}
    )
    emit_table_payload(payload, fmt)


@cli.command("simple-char")
@_type_opt
@_l_opt
@_weight_opt
@_format_opt
@click.option("--depth", default=12, type=int, show_default=True)
@click.pass_context
def simple_char(ctx, type_, l, weight, fmt, depth):
    """Truncated character of L_q(weight), exact on the stated window."""
    payload = _client(ctx).post(
        "/v1/simple-char",
        {"type": type_, "l": l, "weight": parse_weight(weight), "depth": depth},
    )
    doc = {
        "window": {"tops": payload["window_tops"], "depth": payload["window_depth"]},
        "values": [{"wt": v["wt"], "c": v["c"]} for v in payload["values"]],
    }
    if fmt == "json":
        click.echo(json.dumps(doc))
    else:
        click.echo(f"window tops {payload['window_tops']} depth {payload['window_depth']}")
        for v in payload["values"]:
            click.echo(f"{','.join(str(x) for x in v['wt'])}  {v['c']}")


def _cache_path_for(type_, affine: bool) -> Path | None:
    root = os.environ.get("OQKIT_CACHE")
    if not root:
        return None
    tag = "affine" if affine else "finite"
    return Path(root) / f"{type_.upper()}-{tag}.jsonl"


def _warm_cache(ctx, type_, words: str, cache: str | None):
    """In-process mode only: warm the engine from disk, return a writeback hook."""
    if ctx.obj.get("server") or os.environ.get("OQKIT_SERVER"):
        return lambda: None
    datum = parse_type(type_)
    affine = "0" in words.split()
    group = affine_weyl(datum) if affine else finite_weyl(datum)
    engine = engine_for(group)
    path = Path(cache) if cache else _cache_path_for(type_, affine)
    if path is None:
        return lambda: None
    if path.exists():
        cache_load(engine, path)

    def writeback():
        path.parent.mkdir(parents=True, exist_ok=True)
        cache_store(engine, path)

    return writeback


@cli.command("kl")
@_type_opt
@click.option("--y", required=True, help="Reduced word of y, e.g. \"2\".")
@click.option("--w", required=True, help="Reduced word of w, e.g. \"2 1 3 2\".")
@click.option("--affine", is_flag=True, default=False, help="Force the affine group.")
@click.option("--cache", default=None, help="KL cache file (in-process mode).")
@_format_opt
@click.pass_context
def kl_cmd(ctx, type_, y, w, affine, cache, fmt):
    """Kazhdan-Lusztig polynomial P_{y,w}."""
    words = f"{y} {w}" + (" 0" if affine else "")
    writeback = _warm_cache(ctx, type_, words, cache)
    payload = _client(ctx).post(
        "/v1/kl", {"type": type_, "y": y, "w": w, "affine": affine or None}
    )
    writeback()
    click.echo(json.dumps(payload) if fmt == "json" else payload["text"])


@cli.command("inverse-kl")
@_type_opt
@click.option("--z", required=True, help="Reduced word of z.")
@click.option("--w", required=True, help="Reduced word of w.")
@click.option("--affine", is_flag=True, default=False)
@_format_opt
@click.pass_context
def inverse_kl_cmd(ctx, type_, z, w, affine, fmt):
    """Inverse Kazhdan-Lusztig polynomial Q_{z,w}."""
    payload = _client(ctx).post(
        "/v1/inverse-kl", {"type": type_, "y": z, "w": w, "affine": affine or None}
    )
    click.echo(json.dumps(payload) if fmt == "json" else payload["text"])


@cli.command("predicates")
@_type_opt
@_l_opt
@_weight_opt
@_format_opt
@click.pass_context
def predicates(ctx, type_, l, weight, fmt):
    """Weight predicates plus guaranteed structural facts."""
    payload = _client(ctx).post(
        "/v1/predicates", {"type": type_, "l": l, "weight": parse_weight(weight)}
    )
    if fmt == "json":
        click.echo(json.dumps(payload))
    else:
        for k, v in payload.items():
            click.echo(f"{k}: {'yes' if v else 'no'}")


@cli.command("special-block")
@_type_opt
@_l_opt
@_weight_opt
@_format_opt
@click.pass_context
def special_block_cmd(ctx, type_, l, weight, fmt):
    """Special-block membership and the classical image F(weight)."""
    payload = _client(ctx).post(
        "/v1/special-block", {"type": type_, "l": l, "weight": parse_weight(weight)}
    )
    click.echo(json.dumps(payload))


@cli.command("generic-mult")
@_type_opt
@_weight_opt
@click.option("--mu", required=True, help="Comma-separated coordinates.")
@_format_opt
@click.pass_context
def generic_mult(ctx, type_, weight, mu, fmt):
    """Generic-parameter [Delta_v(weight) : L_v(mu)] (the classical value)."""
    payload = _client(ctx).post(
        "/v1/generic-mult",
        {"type": type_, "weight": parse_weight(weight), "mu": parse_weight(mu)},
    )
    click.echo(json.dumps(payload) if fmt == "json" else str(payload["value"]))


@cli.group("cache")
def cache_group():
    """Inspect and export persistent KL caches (local files)."""


@cache_group.command("stats")
@click.option("--path", required=True)
@_format_opt
def cache_stats_cmd(path, fmt):
    """Validate a cache file and print its header and entry count."""
    try:
        info = cache_stats(path)
    except CacheError as exc:
        raise click.ClickException(str(exc)) from exc
    if fmt == "json":
        click.echo(json.dumps(info))
    else:
        click.echo(f"header: {info['header']}")
        click.echo(f"entries: {info['entries']}")


@cache_group.command("export")
@click.option("--type", "type_", required=True)
@click.option("--path", required=True)
def cache_export_cmd(type_, path):
    """Compute the full KL table of a finite type and store it."""
    datum = parse_type(type_)
    group = finite_weyl(datum)
    engine = engine_for(group)
    engine.fill_finite_table()
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    n = cache_store(engine, path)
    click.echo(f"stored {n} entries to {path}")


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, type=int, show_default=True)
def serve(host, port):
    """Run the oqkit service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except RejectedRange as exc:
        click.echo(f"rejected: {exc}", err=True)
        return 2
    except click.exceptions.Abort:
        return 1
    except SystemExit as exc:  # click's --help path
        code = exc.code
        return int(code) if code else 0


if __name__ == "__main__":
    sys.exit(main())
