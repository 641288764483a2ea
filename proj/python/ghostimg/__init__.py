# Copyright 2026 The ghostimg Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Computational ghost imaging: measurement simulation and GI/DGI reconstruction."""

from ghostimg._core import (
    Generator,
    GeneratorKind,
    GhostImgError,
    Measurement,
    ReferenceTables,
    lfsr_leap64,
    lfsr_step,
    normalize,
    patterns,
    psnr,
    read_pgm,
    reconstruct_dgi,
    reconstruct_dgi_fixed,
    reconstruct_gi,
    reference_tables,
    simulate,
    ssim,
    write_pgm,
)

__all__ = [
    "Generator",
    "GeneratorKind",
    "GhostImgError",
    "Measurement",
    "ReferenceTables",
    "lfsr_leap64",
    "lfsr_step",
    "normalize",
    "patterns",
    "psnr",
    "read_pgm",
    "reconstruct_dgi",
    "reconstruct_dgi_fixed",
    "reconstruct_gi",
    "reference_tables",
    "simulate",
    "ssim",
    "write_pgm",
]
