"""JSON reading and writing for nit sets and operators.

Nit sets are written canonicalized, so ``write(read(x))`` is stable byte for
byte. Reading checks the schema and reports the offending location; it does
not check the separation properties unless asked to.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Any

from nitpart.errors import ParseError, ValidationError
from nitpart.operators import ContextDiagonal, DiagonalOperator, PrimeAssignment, decode_table
from nitpart.partitions import NitParams, NitSet, canonicalize, is_valid_nit_set


def format_reals(obj: Any) -> Any:
    """Round floats to 12 significant digits, recursively."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: format_reals(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [format_reals(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(format_reals(obj))


def nit_set_to_dict(s: NitSet) -> dict:
    c = canonicalize(s)
    return {"n": c.n, "k": c.k, "partitions": [[list(b) for b in p] for p in c.partitions]}


def write_nit_set(s: NitSet) -> str:
    return json.dumps(nit_set_to_dict(s))


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def nit_set_from_dict(data: Any) -> NitSet:
    if not isinstance(data, dict):
        raise ParseError(f"$: expected an object, got {type(data).__name__}")
    for key in ("n", "k", "partitions"):
        if key not in data:
            raise ParseError(f"$.{key}: missing")
    n, k = _int(data["n"], "$.n"), _int(data["k"], "$.k")
    try:
        params = NitParams(n, k)
    except ValueError as exc:
        raise ParseError(f"$: {exc}") from None
    parts = data["partitions"]
    if not isinstance(parts, list):
        raise ParseError("$.partitions: expected a list")
    out = []
    for j, p in enumerate(parts):
        if not isinstance(p, list):
            raise ParseError(f"$.partitions[{j}]: expected a list of blocks")
        blocks = []
        for b, block in enumerate(p):
            if not isinstance(block, list):
                raise ParseError(f"$.partitions[{j}][{b}]: expected a list of states")
            blocks.append(tuple(_int(x, f"$.partitions[{j}][{b}][{i}]") for i, x in enumerate(block)))
        out.append(tuple(blocks))
    return NitSet(params, tuple(out))


def read_nit_set(source: str | Path | IO[str], validate: bool = False) -> NitSet:
    """Read from a path or an open text stream."""
    if hasattr(source, "read"):
        text, name = source.read(), getattr(source, "name", "<stream>")
    else:
        text, name = Path(source).read_text(), str(source)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{name}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        s = nit_set_from_dict(data)
    except ParseError as exc:
        raise ParseError(f"{name}: {exc}") from None
    if validate:
        report = is_valid_nit_set(s)
        if not report:
            raise ValidationError(f"{name}: invalid nit set: {json.dumps(report.to_dict())}")
    return s


def operator_to_dict(op: DiagonalOperator) -> dict:
    return op.to_dict()


def context_to_dict(ctx: ContextDiagonal, s: NitSet, ops: list[DiagonalOperator]) -> dict:
    assignment = ctx.assignment or PrimeAssignment(tuple(op.primes for op in ops))
    return {
        "entries": list(ctx.entries),
        "partition": [[list(b) for b in p] for p in s.partitions],
        "primes": [list(row) for row in assignment.primes],
        "operators": [operator_to_dict(op) for op in ops],
        "decode_table": decode_table(ctx, s, assignment),
    }
