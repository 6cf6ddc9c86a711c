"""Integral logarithm over Iwasawa algebras, with the same JSON wire format as the CLI."""

import json

from . import _core

__all__ = ["IwalogError", "evaluate", "verify", "selftest", "operations", "suites"]

IwalogError = _core.Error


def _code(self):
    return self.args[0]


def _detail(self):
    return self.args[1]


def _exit_code(self):
    return self.args[2]


IwalogError.code = property(_code)
IwalogError.detail = property(_detail)
IwalogError.exit_code = property(_exit_code)


def _operand(x):
    return x if isinstance(x, str) else json.dumps(x)


def evaluate(op, *operands, l=3, prec_l=6, trunc_T=40, group=(), k=1, h0="", determined=False):
    """Runs one eval operation; operands are JSON values, JSON text or "@file"."""
    out = _core.evaluate(op, [_operand(x) for x in operands], l, prec_l, trunc_T, list(group), k, h0, determined)
    return json.loads(out)


def verify(suite, l=3, prec_l=6, trunc_T=40, group=(), seed=20240601, samples=100):
    return json.loads(_core.verify(suite, l, prec_l, trunc_T, list(group), seed, samples))


def selftest():
    return json.loads(_core.selftest())


def operations():
    return list(_core.operation_names())


def suites():
    return list(_core.suite_names())
