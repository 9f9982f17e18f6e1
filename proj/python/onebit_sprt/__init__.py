# SPDX-License-Identifier: Apache-2.0
#
# onebit-sprt: sequential detection with sign-quantized sensor arrays
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""Sequential detection with sign-quantized sensor arrays."""

from ._core import (
    GaussianPair,
    RunConfig,
    ScenarioConfig,
    TestStatisticWeights,
    amplitude_from_db,
    amplitude_to_db,
    arcsine_correlation,
    asn,
    asn_table,
    build_covariance,
    build_steering,
    build_weights,
    efficiency,
    efficiency_table,
    expected_approx_llr,
    latency,
    mu_phi,
    natural_difference,
    normalize_correlation,
    orthant2,
    orthant3,
    orthant4,
    pair_index_map,
    quad_moment,
    quantize_sign,
    r_phi,
    run_experiment,
    run_sprt,
    simulate,
    statistics,
    thresholds,
)

__version__ = "0.1.0"
