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

import os
from pathlib import Path

import symdrift


def pytest_configure(config):
    # Under ctest the freshly built module must be the one imported.
    stage = os.environ.get("SYMDRIFT_EXPECT_STAGE")
    if stage:
        loaded = Path(symdrift.__file__).resolve()
        assert Path(stage).resolve() in loaded.parents, f"imported {loaded}, expected a module under {stage}"
