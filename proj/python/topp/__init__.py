# Copyright 2026 The topp Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     https://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Time-optimal path parameterization by phase-plane integration."""

from ._core import ProblemError, batch, normalize, oracle, solve, validate

__all__ = ["ProblemError", "batch", "normalize", "oracle", "solve", "validate"]
__version__ = "1.0.0"
