#!/usr/bin/env python3
"""Render the showcase embeddings as SVG arc diagrams.

Writes four files into the output directory: the 7-page embedding of
K5 x C3, the 8-page embedding of K6 x C3, the 7-page product embedding of
(K5 minus an edge) x P3, and the 6-page product embedding of K4 x C4.

Usage:
  python3 scripts/make_figures.py --out figures/
"""

from __future__ import annotations

import argparse
from pathlib import Path

from matchbook.constructions import (
    complete_embedding,
    kpcq_embedding,
    path_witness,
    product_embedding,
)
from matchbook.graphs import complete, delete_edge
from matchbook.layout import BookEmbedding, validate
from matchbook.render import render_svg


def k5_minus_edge_embedding() -> BookEmbedding:
    full = complete_embedding(5)
    g = delete_edge(complete(5), (0, 1))
    pages = tuple(p for e, p in zip(full.graph.edges, full.pages) if e != (0, 1))
    return BookEmbedding(g, full.spine, pages, 5)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures", help="output directory")
    ap.add_argument("--split-pages", action="store_true", help="one band per page")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    items = {
        "k5_c3": kpcq_embedding(5, 3).embedding,
        "k6_c3": kpcq_embedding(6, 3).embedding,
        "k5e_p3": product_embedding(k5_minus_edge_embedding(), path_witness(3)),
        "k4_c4": kpcq_embedding(4, 4).embedding,
    }
    for name, emb in items.items():
        assert validate(emb).valid
        target = out / f"{name}.svg"
        target.write_text(render_svg(emb, split_pages=args.split_pages))
        print(f"{target}  ({emb.graph.name}, {emb.page_count} pages)")


if __name__ == "__main__":
    main()
