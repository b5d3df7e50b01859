#!/usr/bin/env python3
"""Fetch the Cora and Citeseer citation graphs and convert them to the
TSV formats the toolkit ingests.

Sources are the standard Planetoid files (ind.<name>.{x,tx,allx,y,ty,ally,
graph,test.index}) vendored by several public GitHub repositories. The
script downloads one repo tarball, unpickles the feature/label/graph
objects, and writes per-dataset:

    edges.tsv      one undirected edge per line: "u<TAB>v" with u < v
    features.tsv   sparse boolean indicators, one nonzero per line: "node<TAB>dim"
    labels.tsv     "node<TAB>class_id" (argmax of the one-hot row; the handful
                   of Citeseer test ids with no label row get class 0)

Node ids follow the Planetoid row order (allx rows, then the test rows in
test.index order). Requires numpy + scipy for unpickling.

Usage:
    python3 tools/fetch_datasets.py --out data
    # behind an artifactory github proxy:
    python3 tools/fetch_datasets.py --out data \
      --tarball-template 'https://<host>/artifactory/api/vcs/downloadBranch/github/{repo}/{branch}?ext=tar.gz'
"""

import argparse
import io
import os
import pickle
import sys
import tarfile
import urllib.request

import numpy as np
import scipy.sparse as sp

SOURCE_REPO = "zhulf0804/GCN.PyTorch"  # vendored copy of the Planetoid files
SOURCE_BRANCH = "master"
DEFAULT_TEMPLATE = "https://github.com/{repo}/archive/refs/heads/{branch}.tar.gz"
DATASETS = ("cora", "citeseer")
EXTS = ("x", "tx", "allx", "y", "ty", "ally", "graph")


def download_tarball(template: str) -> bytes:
    url = template.format(repo=SOURCE_REPO, branch=SOURCE_BRANCH)
    print(f"downloading {url}")
    with urllib.request.urlopen(url) as resp:
        return resp.read()


def extract_planetoid(tar_bytes: bytes, name: str):
    objs = {}
    test_idx = None
    with tarfile.open(fileobj=io.BytesIO(tar_bytes), mode="r:gz") as tar:
        for member in tar.getmembers():
            base = os.path.basename(member.name)
            for ext in EXTS:
                if base == f"ind.{name}.{ext}":
                    objs[ext] = pickle.loads(tar.extractfile(member).read(), encoding="latin1")
            if base == f"ind.{name}.test.index":
                test_idx = np.loadtxt(io.BytesIO(tar.extractfile(member).read()), dtype=int)
    missing = [e for e in EXTS if e not in objs]
    if missing or test_idx is None:
        raise RuntimeError(f"{name}: missing planetoid files {missing}")
    return objs, test_idx


def assemble(objs, test_idx):
    tx, allx = objs["tx"], objs["allx"]
    ty, ally = objs["ty"], objs["ally"]
    span = np.arange(test_idx.min(), test_idx.max() + 1)
    # Citeseer has gaps in test.index; the absent rows stay all-zero.
    tx_ext = sp.lil_matrix((len(span), tx.shape[1]))
    tx_ext[test_idx - test_idx.min(), :] = tx
    ty_ext = np.zeros((len(span), ty.shape[1]))
    ty_ext[test_idx - test_idx.min(), :] = ty
    features = sp.vstack([allx, tx_ext]).tocsr()
    labels = np.vstack([ally, ty_ext])
    return features, labels, objs["graph"]


def write_dataset(out_dir: str, features, labels, graph):
    os.makedirs(out_dir, exist_ok=True)
    edges = set()
    for u, nbrs in graph.items():
        for v in nbrs:
            if u != v:
                edges.add((min(u, v), max(u, v)))
    # Nodes with no incident edge cannot survive largest-component extraction;
    # drop their feature/label rows so every referenced id occurs in edges.tsv.
    touched = {u for e in edges for u in e}
    with open(os.path.join(out_dir, "edges.tsv"), "w") as f:
        for u, v in sorted(edges):
            f.write(f"{u}\t{v}\n")
    coo = features.tocoo()
    if not np.all((coo.data == 0) | (coo.data == 1)):
        raise RuntimeError("expected boolean word indicators")
    nz = sorted((r, c) for r, c in zip(coo.row.tolist(), coo.col.tolist()) if r in touched)
    used_dims = {c for _, c in nz}
    if len(used_dims) != features.shape[1]:
        raise RuntimeError("some feature dims have no nonzero; dim count would be lost")
    with open(os.path.join(out_dir, "features.tsv"), "w") as f:
        for r, c in nz:
            f.write(f"{r}\t{c}\n")
    with open(os.path.join(out_dir, "labels.tsv"), "w") as f:
        for node in range(labels.shape[0]):
            if node in touched:
                f.write(f"{node}\t{int(np.argmax(labels[node]))}\n")
    print(f"{out_dir}: {len(touched)} edge-touched nodes, {len(edges)} edges, "
          f"{features.shape[1]} feature dims, {labels.shape[1]} classes")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data")
    ap.add_argument("--tarball-template", default=os.environ.get("GITHUB_TARBALL_TEMPLATE", DEFAULT_TEMPLATE))
    args = ap.parse_args()

    tar_bytes = download_tarball(args.tarball_template)
    for name in DATASETS:
        objs, test_idx = extract_planetoid(tar_bytes, name)
        features, labels, graph = assemble(objs, test_idx)
        write_dataset(os.path.join(args.out, name), features, labels, graph)


if __name__ == "__main__":
    sys.exit(main())
