"""CSV and manifest emission.

Every file is written with LF line endings and 17 significant digits, so the
same inputs always produce byte-identical output.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import __version__

__all__ = ["format_value", "write_csv", "write_manifest", "write_classical", "write_bundle"]

CLASSICAL_COLUMNS = ("z_nm", "N_eff", "u", "v", "rho", "theta_rad", "s_nm")
INDEX_COLUMNS = ("z_nm", "N_eff")
NOISE_COLUMNS = ("z_nm", "theta_rad", "noise", "gouy_rad")
WAVEFUNCTION_COLUMNS = ("e", "re", "im", "abs2")


def format_value(x):
    return format(float(x), ".17g")


def write_csv(path, header, columns):
    """Write equal-length columns under a header row; returns a manifest entry."""
    cols = [np.asarray(c, dtype=float) for c in columns]
    n = cols[0].size
    if any(c.size != n for c in cols) or len(cols) != len(header):
        raise ValueError("columns must match the header and share one length")
    path = Path(path)
    with path.open("w", newline="\n", encoding="ascii") as fh:
        fh.write(",".join(header) + "\n")
        for row in zip(*cols):
            fh.write(",".join(format_value(x) for x in row) + "\n")
    return {"file": path.name, "columns": list(header), "rows": n}


def write_manifest(out_dir, command, config, files, diagnostics, tolerances):
    manifest = {
        "generator": f"gouyprop {__version__}",
        "command": command,
        "config": config,
        "tolerances": tolerances,
        "diagnostics": diagnostics,
        "files": files,
    }
    path = Path(out_dir) / "manifest.json"
    with path.open("w", newline="\n", encoding="ascii") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def write_classical(sol, out_dir):
    out_dir = Path(out_dir)
    return write_csv(
        out_dir / "classical.csv",
        CLASSICAL_COLUMNS,
        [sol.z, sol.n_eff, sol.u, sol.v, sol.rho, sol.theta, sol.s],
    )


def write_bundle(result, out_dir):
    """Write the CSV files selected by ``result.config.outputs``.

    Returns the list of manifest file entries.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = result.config.outputs
    sol = result.solution
    files = []
    if "effective_index" in outputs:
        files.append(write_csv(out_dir / "effective_index.csv", INDEX_COLUMNS, [sol.z, sol.n_eff]))
    if "classical_phase" in outputs:
        files.append(write_classical(sol, out_dir))
    if "noise" in outputs or "gouy" in outputs:
        for i, st in enumerate(result.config.states):
            entry = write_csv(
                out_dir / f"noise_state{i}.csv",
                NOISE_COLUMNS,
                [sol.z, sol.theta, result.noise[i], result.gouy[i]],
            )
            entry["state"] = {"alpha_abs": st.amplitude, "phi_rad": st.phase, "noise0": st.noise0}
            files.append(entry)
    for k, snap in enumerate(result.snapshots):
        entry = write_csv(
            out_dir / f"wavefunction_state{snap.state_index}_z{k // max(len(result.config.states), 1)}.csv",
            WAVEFUNCTION_COLUMNS,
            [snap.e, snap.psi.real, snap.psi.imag, np.abs(snap.psi) ** 2],
        )
        entry.update(state_index=snap.state_index, z_nm=snap.z_nm, theta_rad=snap.theta)
        files.append(entry)
    return files
