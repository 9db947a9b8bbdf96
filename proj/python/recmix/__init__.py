# Copyright 2026 The recmix Authors.
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
"""Fixed-budget recency-weighted sampling and filtering."""

from recmix._recmix import (
    DegenerateWeights,
    Error,
    InputError,
    InvalidParameter,
    InvalidState,
    NoData,
    NonNormalizable,
    Unsupported,
    allocate_samples,
    effective_horizon,
    generate,
    kalman_step,
    ks_statistic,
    mixing_weights,
    oracle_vs_chain_distance,
    refresh_count,
    rmse,
    run_chain,
    run_filter,
    wasserstein1,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateWeights",
    "Error",
    "InputError",
    "InvalidParameter",
    "InvalidState",
    "NoData",
    "NonNormalizable",
    "Unsupported",
    "allocate_samples",
    "effective_horizon",
    "generate",
    "kalman_step",
    "ks_statistic",
    "mixing_weights",
    "oracle_vs_chain_distance",
    "refresh_count",
    "rmse",
    "run_chain",
    "run_filter",
    "wasserstein1",
]
