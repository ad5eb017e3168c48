# Copyright 2026 The pamon Authors.
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

from ._pamon import (
    Monitor,
    PamonError,
    Policy,
    achievable,
    evaluate,
    parse,
    read_trace,
    sub_purpose,
    to_dot,
)

__all__ = [
    "Monitor",
    "PamonError",
    "Policy",
    "achievable",
    "evaluate",
    "parse",
    "read_trace",
    "sub_purpose",
    "to_dot",
]
