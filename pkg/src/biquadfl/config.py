"""Run configurations: exact JSON in, algebra objects out.

A configuration pins down everything a command needs::

    {
      "field": {"kind": "padic", "p": 3},
      "K1": ["1", "0", "1"],
      "K2": ["1", "0", "-3"],
      "B":  {"kind": "division", "h": 1},
      "b1": [["0", "1"], ["0", "0"]],
      "b2": [["0", "0"], ["1", "0"]],
      "f":  [{"type": [0, 0], "coeff": "1"}],
      "options": {"seed": 0, "depth": 16, "level": 0, "precision": 24}
    }

Scalar entries are exact literals of the ``a/b*pi^k`` kind (``pi`` and
``t`` both name the uniformizer; sums and parentheses are allowed).  No
floating point exists anywhere on the input path.

* ``K1``/``K2``: descending monic minimal polynomial ``[1, a1, a0]`` of a
  quadratic etale algebra, or the string ``"split"`` for F x F with its
  canonical generator.  Any monic separable quadratic is accepted; the
  package renormalizes internally and keeps track of the change of
  generator.
* ``B``: the ambient algebra -- ``kind`` is ``"matrix"`` or ``"division"``
  and ``h`` the rank (the algebra has dimension 4h^2).
* ``b1``/``b2``: the images of roots of the K1/K2 polynomials *as
  written*, given as 2h rows of 2h literals.  For the matrix kind these
  are the rows of the matrix; for the division kind row i holds the
  base-field coordinates of the E-coefficient of Pi^i.
* ``f`` (optional): a compactly supported bi-invariant function as a list
  of ``{"type": [...], "coeff": "..."}`` entries; commands default to the
  unit (the type-zero indicator) when it is absent.
* ``options`` (optional): ``seed`` for randomized suites, ``depth`` for
  the stratified integrator's cap, ``level`` for the congruence level m,
  ``precision`` for capped-precision displays/certificates.

``RunConfig.to_json()`` re-emits the parsed configuration with every
literal in canonical form; re-parsing that echo yields an equivalent
configuration (same field, same algebras, same images, same options).
"""

import json

from fractions import Fraction

from .csa import CSA
from .errors import ConfigError
from .etale import BiquadDiagram, QuadEtale
from .integrate import HeckeFunction
from .invariant import PairContext
from .localfield import FieldDesc, parse_literal

OPTION_DEFAULTS = {"seed": 0, "depth": 16, "level": 0, "precision": 24}


def _fail(msg):
    raise ConfigError(msg)


def _parse_field(data):
    if not isinstance(data, dict):
        _fail("'field' must be an object with 'kind' and 'p'")
    kind = data.get("kind")
    p = data.get("p")
    d = data.get("d", 1)
    if kind not in ("padic", "laurent"):
        _fail("field.kind must be 'padic' or 'laurent', got %r" % (kind,))
    if not isinstance(p, int) or p < 2:
        _fail("field.p must be an integer >= 2, got %r" % (p,))
    if not isinstance(d, int) or d < 1:
        _fail("field.d must be a positive integer, got %r" % (d,))
    return kind, p, d


def _parse_scalar(desc, lit, where):
    if isinstance(lit, bool):
        _fail("%s: booleans are not scalars" % where)
    if isinstance(lit, int):
        return desc.from_int(lit)
    if not isinstance(lit, str):
        _fail("%s: scalar entries must be literal strings, got %r"
              % (where, lit))
    try:
        return parse_literal(desc, lit)
    except ConfigError as e:
        raise ConfigError("%s: %s" % (where, e))


def _parse_kspec(desc, spec, name):
    """Returns (QuadEtale, canonical echo)."""
    if spec == "split":
        return QuadEtale.split(desc), "split"
    if not (isinstance(spec, list) and len(spec) == 3):
        _fail("%s must be 'split' or a descending [lead, mid, const] "
              "minimal polynomial" % name)
    coeffs = [_parse_scalar(desc, c, "%s[%d]" % (name, i))
              for i, c in enumerate(spec)]
    K = QuadEtale.from_minpoly(desc, coeffs)
    return K, [c.literal() for c in coeffs]


def _parse_image(B, K, rows, name):
    """Image of a root of the as-written polynomial -> image of the
    normalized generator.  Returns (element, canonical echo rows)."""
    n = B.n
    if not (isinstance(rows, list) and len(rows) == n
            and all(isinstance(r, list) and len(r) == n for r in rows)):
        _fail("%s must be %d rows of %d scalar literals" % (name, n, n))
    flat = [_parse_scalar(B.desc, rows[i][j], "%s[%d][%d]" % (name, i, j))
            for i in range(n) for j in range(n)]
    raw = B.from_coords(flat)
    shift, scale = K.transform
    img = B.smul(scale, B.add(raw, B.from_scalar(shift)))
    echo = [[c.literal() for c in flat[i * n:(i + 1) * n]] for i in range(n)]
    return img, echo


def _parse_hecke(data, h):
    if not isinstance(data, list):
        _fail("'f' must be a list of {'type': [...], 'coeff': '...'} entries")
    pairs = []
    for i, entry in enumerate(data):
        if not (isinstance(entry, dict) and "type" in entry
                and "coeff" in entry):
            _fail("f[%d] must have 'type' and 'coeff'" % i)
        t = entry["type"]
        if not (isinstance(t, list) and all(isinstance(v, int) for v in t)):
            _fail("f[%d].type must be a list of integers" % i)
        try:
            c = Fraction(entry["coeff"])
        except (ValueError, ZeroDivisionError, TypeError):
            _fail("f[%d].coeff is not an exact rational: %r"
                  % (i, entry["coeff"]))
        pairs.append((tuple(t), c))
    return HeckeFunction(pairs, h=h)


def _parse_options(data, overrides):
    opts = dict(OPTION_DEFAULTS)
    if data is not None:
        if not isinstance(data, dict):
            _fail("'options' must be an object")
        for k, v in data.items():
            if k not in OPTION_DEFAULTS:
                _fail("unknown option %r (have: %s)"
                      % (k, ", ".join(sorted(OPTION_DEFAULTS))))
            if not isinstance(v, int) or isinstance(v, bool):
                _fail("option %r must be an integer, got %r" % (k, v))
            opts[k] = v
    for k, v in overrides.items():
        if v is not None:
            opts[k] = int(v)
    return opts


class RunConfig:
    """A parsed configuration plus builders for the algebra objects."""

    def __init__(self, desc, K1, K2, k1_echo, k2_echo, b_kind, h,
                 b1, b2, b1_echo, b2_echo, f, options):
        self.desc = desc
        self.K1 = K1
        self.K2 = K2
        self.b_kind = b_kind
        self.h = h
        self.b1 = b1
        self.b2 = b2
        self.f = f                      # HeckeFunction or None
        self.options = options
        self._echo = {
            "field": {"kind": desc.kind, "p": desc.p, "d": desc.d},
            "K1": k1_echo, "K2": k2_echo,
            "B": {"kind": b_kind, "h": h},
            "b1": b1_echo, "b2": b2_echo,
            "options": dict(options),
        }
        if f is not None:
            self._echo["f"] = f.to_json()
        self._B = None
        self._diagram = None

    @classmethod
    def from_json(cls, data, seed=None, depth=None, level=None,
                  precision=None):
        """Build from a decoded JSON object; keyword arguments override the
        file's options (used for command-line flags)."""
        if not isinstance(data, dict):
            _fail("configuration must be a JSON object")
        known = {"field", "K1", "K2", "B", "b1", "b2", "f", "options"}
        extra = set(data) - known
        if extra:
            _fail("unknown configuration keys: %s"
                  % ", ".join(sorted(extra)))
        for key in ("field", "K1", "K2", "B", "b1", "b2"):
            if key not in data:
                _fail("missing configuration key %r" % key)
        options = _parse_options(data.get("options"),
                                 {"seed": seed, "depth": depth,
                                  "level": level, "precision": precision})
        kind, p, d = _parse_field(data["field"])
        desc = FieldDesc(kind, p, d=d, precision=options["precision"])
        K1, k1_echo = _parse_kspec(desc, data["K1"], "K1")
        K2, k2_echo = _parse_kspec(desc, data["K2"], "K2")
        bspec = data["B"]
        if not (isinstance(bspec, dict) and bspec.get("kind") in
                ("matrix", "division") and bspec.get("h") in (1, 2)):
            _fail("'B' must be {'kind': 'matrix'|'division', 'h': 1|2}")
        B = CSA(desc, bspec["kind"], bspec["h"])
        b1, b1_echo = _parse_image(B, K1, data["b1"], "b1")
        b2, b2_echo = _parse_image(B, K2, data["b2"], "b2")
        f = _parse_hecke(data["f"], bspec["h"]) if "f" in data else None
        cfg = cls(desc, K1, K2, k1_echo, k2_echo, bspec["kind"], bspec["h"],
                  b1, b2, b1_echo, b2_echo, f, options)
        cfg._B = B
        return cfg

    @classmethod
    def load(cls, path, **overrides):
        try:
            with open(path, "r") as fh:
                data = json.load(fh)
        except OSError as e:
            raise ConfigError("cannot read config file %s: %s" % (path, e))
        except json.JSONDecodeError as e:
            raise ConfigError("config file %s is not valid JSON: %s"
                              % (path, e))
        return cls.from_json(data, **overrides)

    # -- builders -------------------------------------------------------------

    def algebra(self):
        if self._B is None:
            self._B = CSA(self.desc, self.b_kind, self.h)
        return self._B

    def diagram(self):
        if self._diagram is None:
            self._diagram = BiquadDiagram(self.K1, self.K2)
        return self._diagram

    def context(self, check=True):
        return PairContext(self.diagram(), self.algebra(), self.b1, self.b2,
                           check=check)

    def hecke(self):
        """The configured function, or the unit if none was given."""
        if self.f is not None:
            return self.f
        return HeckeFunction.unit(self.h)

    def to_json(self):
        return {k: (dict(v) if isinstance(v, dict) else v)
                for k, v in self._echo.items()}
