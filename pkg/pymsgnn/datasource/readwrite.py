# -*- coding: utf-8 -*-
"""
.. module:: readwrite
    :synopsis: Read and write graphs, labels, splits and matrices

.. moduleauthor:: Alex Gates <ajgates42@gmail.com>
 """
import os

import numpy as np
import pandas as pd

import scipy.sparse as spsparse

from pymsgnn.utils import pyMSGNNDataError, value_to_int, check4columns
from pymsgnn.signednetwork import from_edge_list
from pymsgnn.sparsenetworkutils import sparse2dataframe

GRAPH_MAGIC = b'MSG1'
EDGE_RECORD = np.dtype([('src', '<u8'), ('dst', '<u8'), ('weight', '<f8')])


def _is_number(v):
    try:
        float(v)
        return True
    except (ValueError, TypeError):
        return False

def _is_int(v):
    try:
        return float(v) == int(float(v))
    except (ValueError, TypeError, OverflowError):
        return False

def read_edge_list(path, relabel='auto', n=None):
    """
    Read a signed edge list from a UTF-8 CSV file with rows src,dst,weight.

    A header row is detected by a non-numeric first row.  A missing weight column means weight 1.
    Extra columns (e.g. timestamps) are ignored.

    Parameters
    ----------
    :param path : str
        The CSV file.

    :param relabel : bool or 'auto', default 'auto'
        If True, node ids are mapped to 0..n-1 in sorted order and kept as graph.node_ids.  'auto'
        relabels only when the ids are not all nonnegative integers.

    :param n : int, optional
        Number of nodes when the ids are used directly.

    Returns
    -------
    SignedDiGraph
    """
    if not os.path.exists(path):
        raise FileNotFoundError("Edge list {} does not exist.".format(path))

    try:
        df = pd.read_csv(path, header=None, dtype=str, comment='#', skipinitialspace=True)
    except pd.errors.EmptyDataError:
        return from_edge_list([], n=n)
    if df.shape[0] > 0 and not all(_is_number(v) for v in df.iloc[0, :2]):
        df = df.iloc[1:]
    if df.shape[1] < 2:
        raise pyMSGNNDataError("{} needs at least the columns src,dst".format(path))

    edges = pd.DataFrame({'src':df.iloc[:, 0].str.strip().values, 'dst':df.iloc[:, 1].str.strip().values})
    if df.shape[1] >= 3:
        weights = pd.to_numeric(df.iloc[:, 2], errors='coerce').values
        if np.isnan(weights).any():
            raise pyMSGNNDataError("{} has a non-numeric weight.".format(path))
        edges['weight'] = weights
    else:
        edges['weight'] = 1.0

    ids = np.concatenate([edges['src'].values, edges['dst'].values])
    integer_ids = all(_is_int(v) and float(v) >= 0 for v in ids)

    if relabel is True or (relabel == 'auto' and not integer_ids):
        values = [int(float(v)) for v in ids] if integer_ids else list(ids)
        mapped, id2int = value_to_int(values, sort_values='value')
        node_ids = np.array(list(id2int.keys()))
        m = edges.shape[0]
        edges['src'], edges['dst'] = mapped[:m], mapped[m:]
        return from_edge_list(edges, n=len(node_ids), node_ids=node_ids)

    if not integer_ids:
        raise pyMSGNNDataError("{} has non-integer node ids; read it with relabel=True".format(path))
    edges['src'] = [int(float(v)) for v in edges['src'].values]
    edges['dst'] = [int(float(v)) for v in edges['dst'].values]
    return from_edge_list(edges, n=n)

def write_edge_list(g, path, header=True):
    g.edges().to_csv(path, index=False, header=header)

def write_node_map(g, path):
    """
    Write the node index to external id map as CSV with columns 'node', 'id'.
    """
    node_ids = g.node_ids if g.node_ids is not None else np.arange(g.n)
    pd.DataFrame({'node':np.arange(g.n), 'id':node_ids}).to_csv(path, index=False)

def read_node_map(path):
    df = pd.read_csv(path)
    check4columns(df, ['node', 'id'])
    return df.sort_values(by='node')['id'].values

def write_graph_binary(g, path):
    """
    Write the graph to the binary container: magic 'MSG1', little-endian u64 n, then (u64 src, u64 dst, f64 weight) records.
    """
    edges = g.edges()
    records = np.empty(edges.shape[0], dtype=EDGE_RECORD)
    records['src'] = edges['src'].values
    records['dst'] = edges['dst'].values
    records['weight'] = edges['weight'].values

    with open(path, 'wb') as outfile:
        outfile.write(GRAPH_MAGIC)
        outfile.write(np.array([g.n], dtype='<u8').tobytes())
        outfile.write(records.tobytes())

def read_graph_binary(path):
    with open(path, 'rb') as infile:
        content = infile.read()

    if content[:4] != GRAPH_MAGIC:
        raise pyMSGNNDataError("{} is not a binary signed graph (bad magic bytes)".format(path))
    if len(content) < 12 or (len(content) - 12) % EDGE_RECORD.itemsize != 0:
        raise pyMSGNNDataError("{} is truncated".format(path))

    n = int(np.frombuffer(content[4:12], dtype='<u8')[0])
    records = np.frombuffer(content[12:], dtype=EDGE_RECORD)
    edges = pd.DataFrame({'src':records['src'].astype(np.int64), 'dst':records['dst'].astype(np.int64), 'weight':records['weight']})
    return from_edge_list(edges, n=n)

def read_graph(path, **kwargs):
    """
    Read a graph from an edge list CSV or, if the file starts with the magic bytes, the binary container.
    """
    with open(path, 'rb') as infile:
        magic = infile.read(4)
    if magic == GRAPH_MAGIC:
        return read_graph_binary(path)
    return read_edge_list(path, **kwargs)

def write_labels(labels, path):
    pd.DataFrame({'node':np.arange(len(labels)), 'label':labels}).to_csv(path, index=False)

def read_labels(path):
    """
    Read node labels from a CSV with columns 'node', 'label'.
    """
    df = pd.read_csv(path)
    check4columns(df, ['node', 'label'])
    df = df.sort_values(by='node')
    if not np.array_equal(df['node'].values, np.arange(df.shape[0])):
        raise pyMSGNNDataError("{} must label every node 0..n-1 exactly once".format(path))
    return df['label'].values.astype(np.int64)

def write_split(split, path):
    split.to_frame().to_csv(path, index=False)

def read_split_frame(path):
    df = pd.read_csv(path)
    check4columns(df, ['i', 'j', 'class', 'partition'])
    return df

def write_hermitian(m, path, upper_only=False):
    """
    Dump the stored entries of a complex sparse matrix as CSV rows (i, j, re, im).
    """
    sparse2dataframe(m.astype(np.complex128), upper_only=upper_only).to_csv(path, index=False)

def read_hermitian(path, n):
    df = pd.read_csv(path)
    check4columns(df, ['i', 'j', 're', 'im'])
    return spsparse.csr_matrix((df['re'].values + 1j * df['im'].values, (df['i'].values, df['j'].values)), shape=(n, n))

def write_matrix(mat, path, prefix='c'):
    """
    Write a dense matrix (embeddings, lead-lag betas) as CSV with one row per node.
    """
    mat = np.atleast_2d(mat)
    df = pd.DataFrame(mat, columns=['{}{}'.format(prefix, k) for k in range(mat.shape[1])])
    df.insert(0, 'node', np.arange(mat.shape[0]))
    df.to_csv(path, index=False)
