# Copyright 2026 The symdrift Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python interface to the symdrift core.

Problems and records are plain dicts in the documented JSONL schemas.
"""

import json
import os
from pathlib import Path

_DATA = Path(__file__).resolve().parent / "data"
if _DATA.is_dir():
    os.environ.setdefault("SYMDRIFT_LEXICON_DIR", str(_DATA / "lexicon"))
    os.environ.setdefault("SYMDRIFT_PROMPT_DIR", str(_DATA / "prompts"))

from . import _core  # noqa: E402

__all__ = [
    "SymdriftError",
    "attribute_errors",
    "classify_error",
    "compute_sds",
    "diversify",
    "enumerate_models",
    "evaluate",
    "generate_synthetic",
    "load_jsonl",
    "normalize_program",
    "render_config",
    "solve",
]


class SymdriftError(RuntimeError):
    """A library error; `code` is the snake_case error name."""

    def __init__(self, message):
        super().__init__(message)
        self.code = message.split(":", 1)[0]


def _wrap(fn):
    def call(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _core.Error as e:
            raise SymdriftError(str(e)) from None

    call.__name__ = fn.__name__
    call.__doc__ = fn.__doc__
    return call


def _config_text(config):
    if config is None:
        return ""
    if isinstance(config, str):
        return config
    lines = []
    for key, value in config.items():
        if isinstance(value, bool):
            value = "on" if value else "off"
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def _dumps(items):
    return [json.dumps(x) if isinstance(x, dict) else x for x in items]


def load_jsonl(path):
    with open(path, encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]


@_wrap
def generate_synthetic(n=200, depth=5, seed=7):
    return [json.loads(x) for x in _core.generate_synthetic(n, depth, seed)]


@_wrap
def diversify(problems, config=None):
    return [json.loads(x) for x in _core.diversify(_dumps(problems), _config_text(config))]


@_wrap
def solve(program, csp=False, max_steps=10000):
    return json.loads(_core.solve(program, csp, max_steps))


@_wrap
def enumerate_models(program):
    return json.loads(_core.enumerate_models(program))


@_wrap
def normalize_program(program):
    return _core.normalize_program(program)


@_wrap
def evaluate(problems, config=None, out_dir=None):
    """Returns (report, records)."""
    report, records = _core.evaluate(_dumps(problems), _config_text(config), str(out_dir or ""))
    return json.loads(report), [json.loads(r) for r in records]


@_wrap
def compute_sds(records):
    """Returns (sds, concepts, dropped)."""
    return _core.compute_sds(_dumps(records))


@_wrap
def classify_error(record):
    return _core.classify_error(_dumps([record])[0])


@_wrap
def attribute_errors(before, after):
    return dict(_core.attribute_errors(_dumps(before), _dumps(after)))


@_wrap
def render_config(config=None):
    return _core.render_config(_config_text(config))
