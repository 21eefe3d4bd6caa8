# Copyright 2026 The qgpr Authors
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

"""Statevector simulation of quantum Gaussian process regression."""

import json

from ._core import (
    Dataset,
    InvalidArgument,
    NumericalFailure,
    Prediction,
    RunConfig,
    StageError,
    coherent_kernel,
    encode,
    kernel_matrix,
    kernel_vector,
    load_dataset,
    predict_cholesky,
    qgpr_predict,
    run_cli,
    run_quantum,
    se_kernel,
    tail_bound,
    truncation_level,
)
from ._core import compare as _compare


def compare(dataset, config=None):
    """Classical and quantum predictions with absolute errors, as a dict."""
    return json.loads(_compare(dataset, config if config is not None else RunConfig()))


__all__ = [
    "Dataset",
    "InvalidArgument",
    "NumericalFailure",
    "Prediction",
    "RunConfig",
    "StageError",
    "coherent_kernel",
    "compare",
    "encode",
    "kernel_matrix",
    "kernel_vector",
    "load_dataset",
    "predict_cholesky",
    "qgpr_predict",
    "run_cli",
    "run_quantum",
    "se_kernel",
    "tail_bound",
    "truncation_level",
]
