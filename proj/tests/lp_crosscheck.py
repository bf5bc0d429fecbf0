#!/usr/bin/env python3
# Copyright 2026 The nfvplace Authors
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

"""Solves exported LP files with HiGHS and compares against solve-exact."""

import json
import os
import subprocess
import sys
import tempfile

import highspy


def run(cli, *args):
    return subprocess.run([cli, *args], capture_output=True, text=True)


def highs_optimum(lp_path):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.readModel(lp_path)
    h.run()
    status = h.getModelStatus()
    if status == highspy.HighsModelStatus.kInfeasible:
        return None
    if status != highspy.HighsModelStatus.kOptimal:
        raise RuntimeError(f"{lp_path}: HiGHS status {h.modelStatusToString(status)}")
    return round(h.getInfo().objective_function_value)


def main():
    cli = sys.argv[1]
    compared = feasible = 0
    with tempfile.TemporaryDirectory() as tmp:
        for seed in range(1, 13):
            pops, vnfs = 2 + seed % 3, 1 + seed % 4
            inst = os.path.join(tmp, f"i{seed}.json")
            lp = os.path.join(tmp, f"i{seed}.lp")
            gen = {"pop_count": pops, "vnf_count": vnfs, "seed": seed,
                   "area_side_km": 2200, "phi_nfvo": 2, "phi_vnfm": 2,
                   "omega_ms": 20, "big_omega_ms": 35, "big_psi_ms": 40}
            cfg = os.path.join(tmp, f"g{seed}.json")
            with open(cfg, "w") as f:
                json.dump(gen, f)
            assert run(cli, "gen", "--config", cfg, "-o", inst).returncode == 0
            assert run(cli, "export-lp", inst, "--output", lp).returncode == 0
            exact = run(cli, "solve-exact", inst)
            expected = json.loads(exact.stdout)["objective"] if exact.returncode == 0 else None
            if exact.returncode not in (0, 2):
                raise RuntimeError(exact.stderr)
            got = highs_optimum(lp)
            compared += 1
            feasible += expected is not None
            if got != expected:
                print(f"seed {seed}: HiGHS {got} vs solve-exact {expected}")
                return 1
    print(f"{compared} LP optima match solve-exact ({feasible} feasible)")
    return 0 if feasible >= 4 else 1


if __name__ == "__main__":
    sys.exit(main())
