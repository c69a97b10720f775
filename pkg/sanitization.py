import json
import re
from dataclasses import dataclass

from errors import InputError, SchemaError
from polynomials import Polynomial

# "3", "-2/7", "0.125"; no exponents, no floats
COEFF_PATTERN = re.compile(r"^[+-]?(\d+(/\d+)?|\d*\.\d+)$")
VARIABLE_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
MAX_EXPONENT = 1000


@dataclass(frozen=True)
class ParsedInput:
    n: int
    variables: tuple
    polynomials: tuple


def sanitize_coefficient(raw, where):
    """
    Validate a coefficient string before it becomes an exact rational
    """
    if not isinstance(raw, str):
        raise SchemaError(f"{where}: coefficient must be a string, got {type(raw).__name__}")
    text = raw.strip()
    if not COEFF_PATTERN.match(text):
        raise SchemaError(f"{where}: malformed coefficient {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise SchemaError(f"{where}: zero denominator in {text!r}")
    return text


def sanitize_exponents(raw, nvars, where):
    if not isinstance(raw, list) or len(raw) != nvars:
        raise SchemaError(f"{where}: exponents must be a list of {nvars} integers")
    for e in raw:
        if isinstance(e, bool) or not isinstance(e, int) or e < 0:
            raise SchemaError(f"{where}: exponents must be non-negative integers, got {raw}")
        if e > MAX_EXPONENT:
            raise SchemaError(f"{where}: exponent {e} exceeds {MAX_EXPONENT}")
    return raw


def parse_terms(raw_terms, nvars, where="polynomial"):
    """
    Parse the JSON term list of one polynomial into a canonical Polynomial
    """
    if not isinstance(raw_terms, list):
        raise SchemaError(f"{where}: 'terms' must be a list")
    clean = []
    for k, term in enumerate(raw_terms):
        label = f"{where} term {k}"
        if not isinstance(term, dict) or set(term) != {"coeff", "exponents"}:
            raise SchemaError(f"{label}: expected exactly the keys 'coeff' and 'exponents'")
        clean.append({
            "coeff": sanitize_coefficient(term["coeff"], label),
            "exponents": sanitize_exponents(term["exponents"], nvars, label),
        })
    try:
        return Polynomial.from_terms_json(nvars, clean)
    except (InputError, ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"{where}: {e}") from e


def parse_input(data):
    """
    Validate a decoded input document and build its polynomials
    """
    if not isinstance(data, dict):
        raise SchemaError("Input must be a JSON object")
    missing = {"n", "polynomials"} - set(data)
    if missing:
        raise SchemaError(f"Input is missing keys: {sorted(missing)}")
    unknown = set(data) - {"n", "variables", "polynomials"}
    if unknown:
        raise SchemaError(f"Input has unknown keys: {sorted(unknown)}")

    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError(f"'n' must be a positive integer, got {n!r}")
    nvars = n + 1

    variables = data.get("variables", [f"x{i}" for i in range(nvars)])
    if not isinstance(variables, list) or len(variables) != nvars:
        raise SchemaError(f"'variables' must list {nvars} names")
    if any(not isinstance(v, str) or not VARIABLE_PATTERN.match(v) for v in variables):
        raise SchemaError(f"Invalid variable names: {variables}")
    if len(set(variables)) != nvars:
        raise SchemaError(f"Variable names must be distinct: {variables}")

    raw_polys = data["polynomials"]
    if not isinstance(raw_polys, list) or not raw_polys:
        raise SchemaError("'polynomials' must be a non-empty list")
    polys = []
    for i, entry in enumerate(raw_polys):
        if not isinstance(entry, dict) or set(entry) != {"terms"}:
            raise SchemaError(f"polynomial {i}: expected an object with the single key 'terms'")
        poly = parse_terms(entry["terms"], nvars, where=f"polynomial {i}")
        if poly.is_zero():
            raise SchemaError(f"polynomial {i} is zero")
        polys.append(poly)
    return ParsedInput(n, tuple(variables), tuple(polys))


def load_input(path):
    """
    Read and validate an input file
    """
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except FileNotFoundError as e:
        raise SchemaError(f"Input file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise SchemaError(f"Input is not valid JSON: {e.msg} (line {e.lineno})") from e
    except OSError as e:
        raise SchemaError(f"Cannot read {path}: {e}") from e
    return parse_input(data)
