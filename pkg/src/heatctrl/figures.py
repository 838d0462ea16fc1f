"""Matplotlib rendering of the report artifacts, written next to the CSVs."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .control import Control


def plot_control_staircase(u: Control, path: str, title: str = "") -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ts, vs = [], []
    for a, b, v in zip(u.breakpoints, u.breakpoints[1:], u.levels):
        ts += [a, b]
        vs += [v, v]
    ax.plot(ts, vs, drawstyle="default", lw=1.2)
    ax.set_xlabel("t")
    ax.set_ylabel("u(t)")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_profile(grid, values, path: str, xlabel: str = "r", ylabel: str = "value",
                 title: str = "", logx: bool = True) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(np.asarray(grid), np.asarray(values), lw=1.2)
    if logx:
        ax.set_xscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_sections(sections: dict[str, tuple[np.ndarray, np.ndarray]], path: str,
                  xlabel: str, ylabel: str, title: str = "") -> None:
    """Overlay several (x, y) section curves, keyed by legend label."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, (x, y) in sections.items():
        ax.plot(x, y, lw=1.2, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.legend()
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
