# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: conv2d forward/backward, max-pool, bilateral filter,
local window statistics. Mirrors `_numpy.py` exactly (same signatures,
same conventions); float64 only."""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, sqrt

cnp.import_array()


def conv2d_forward(cnp.ndarray x_in, cnp.ndarray w_in, int stride, int pad):
    cdef double[:, :, :, ::1] x
    if pad:
        x = np.ascontiguousarray(np.pad(x_in, ((0, 0), (0, 0), (pad, pad), (pad, pad))))
    else:
        x = np.ascontiguousarray(x_in)
    cdef double[:, :, :, ::1] w = np.ascontiguousarray(w_in)
    cdef Py_ssize_t n = x.shape[0], c = x.shape[1], hp = x.shape[2], wp = x.shape[3]
    cdef Py_ssize_t f = w.shape[0], kh = w.shape[2], kw = w.shape[3]
    cdef Py_ssize_t oh = (hp - kh) // stride + 1
    cdef Py_ssize_t ow = (wp - kw) // stride + 1
    out_arr = np.zeros((n, f, oh, ow))
    cdef double[:, :, :, ::1] out = out_arr
    cdef Py_ssize_t i, j, a, b, ni, fi, ci
    cdef double acc
    for ni in range(n):
        for fi in range(f):
            for i in range(oh):
                for j in range(ow):
                    acc = 0.0
                    for ci in range(c):
                        for a in range(kh):
                            for b in range(kw):
                                acc += x[ni, ci, i * stride + a, j * stride + b] * w[fi, ci, a, b]
                    out[ni, fi, i, j] = acc
    return out_arr


def conv2d_backward_weight(cnp.ndarray x_in, cnp.ndarray gy_in, int stride, int pad,
                           int kh, int kw):
    cdef double[:, :, :, ::1] x
    if pad:
        x = np.ascontiguousarray(np.pad(x_in, ((0, 0), (0, 0), (pad, pad), (pad, pad))))
    else:
        x = np.ascontiguousarray(x_in)
    cdef double[:, :, :, ::1] gy = np.ascontiguousarray(gy_in)
    cdef Py_ssize_t n = x.shape[0], c = x.shape[1]
    cdef Py_ssize_t f = gy.shape[1], oh = gy.shape[2], ow = gy.shape[3]
    gw_arr = np.zeros((f, c, kh, kw))
    cdef double[:, :, :, ::1] gw = gw_arr
    cdef Py_ssize_t i, j, a, b, ni, fi, ci
    cdef double g
    for ni in range(n):
        for fi in range(f):
            for i in range(oh):
                for j in range(ow):
                    g = gy[ni, fi, i, j]
                    for ci in range(c):
                        for a in range(kh):
                            for b in range(kw):
                                gw[fi, ci, a, b] += g * x[ni, ci, i * stride + a, j * stride + b]
    return gw_arr


def conv2d_backward_input(cnp.ndarray gy_in, cnp.ndarray w_in, int stride, int pad,
                          int h, int wd):
    cdef double[:, :, :, ::1] gy = np.ascontiguousarray(gy_in)
    cdef double[:, :, :, ::1] w = np.ascontiguousarray(w_in)
    cdef Py_ssize_t n = gy.shape[0], f = gy.shape[1], oh = gy.shape[2], ow = gy.shape[3]
    cdef Py_ssize_t c = w.shape[1], kh = w.shape[2], kw = w.shape[3]
    gxp_arr = np.zeros((n, c, h + 2 * pad, wd + 2 * pad))
    cdef double[:, :, :, ::1] gxp = gxp_arr
    cdef Py_ssize_t i, j, a, b, ni, fi, ci
    cdef double g
    for ni in range(n):
        for fi in range(f):
            for i in range(oh):
                for j in range(ow):
                    g = gy[ni, fi, i, j]
                    for ci in range(c):
                        for a in range(kh):
                            for b in range(kw):
                                gxp[ni, ci, i * stride + a, j * stride + b] += g * w[fi, ci, a, b]
    if pad:
        return np.ascontiguousarray(gxp_arr[:, :, pad:pad + h, pad:pad + wd])
    return gxp_arr


def maxpool2d_forward(cnp.ndarray x_in, int k, int stride):
    cdef double[:, :, :, ::1] x = np.ascontiguousarray(x_in)
    cdef Py_ssize_t n = x.shape[0], c = x.shape[1], h = x.shape[2], w = x.shape[3]
    cdef Py_ssize_t oh = (h - k) // stride + 1
    cdef Py_ssize_t ow = (w - k) // stride + 1
    y_arr = np.zeros((n, c, oh, ow))
    idx_arr = np.zeros((n, c, oh, ow), dtype=np.int64)
    cdef double[:, :, :, ::1] y = y_arr
    cdef long long[:, :, :, ::1] idx = idx_arr
    cdef Py_ssize_t ni, ci, i, j, a, b, bh, bw
    cdef double best, v
    for ni in range(n):
        for ci in range(c):
            for i in range(oh):
                for j in range(ow):
                    best = x[ni, ci, i * stride, j * stride]
                    bh = i * stride
                    bw = j * stride
                    for a in range(k):
                        for b in range(k):
                            v = x[ni, ci, i * stride + a, j * stride + b]
                            if v > best:
                                best = v
                                bh = i * stride + a
                                bw = j * stride + b
                    y[ni, ci, i, j] = best
                    idx[ni, ci, i, j] = bh * w + bw
    return y_arr, idx_arr


def maxpool2d_backward(cnp.ndarray gy_in, cnp.ndarray idx_in, int h, int w):
    cdef double[:, :, :, ::1] gy = np.ascontiguousarray(gy_in)
    cdef long long[:, :, :, ::1] idx = np.ascontiguousarray(idx_in)
    cdef Py_ssize_t n = gy.shape[0], c = gy.shape[1], oh = gy.shape[2], ow = gy.shape[3]
    gx_arr = np.zeros((n, c, h * w))
    cdef double[:, :, ::1] gx = gx_arr
    cdef Py_ssize_t ni, ci, i, j
    for ni in range(n):
        for ci in range(c):
            for i in range(oh):
                for j in range(ow):
                    gx[ni, ci, idx[ni, ci, i, j]] += gy[ni, ci, i, j]
    return gx_arr.reshape(n, c, h, w)


def bilateral(cnp.ndarray img_in, double sigma_space, double sigma_range, int radius):
    cdef double[:, ::1] img = np.ascontiguousarray(img_in)
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1]
    out_arr = np.zeros((h, w))
    cdef double[:, ::1] out = out_arr
    cdef double inv_ss = -0.5 / (sigma_space * sigma_space)
    cdef double inv_sr = -0.5 / (sigma_range * sigma_range)
    cdef Py_ssize_t size = 2 * radius + 1
    spw_arr = np.zeros((size, size))
    cdef double[:, ::1] spw = spw_arr
    cdef Py_ssize_t y, x, dy, dx, yy, xx
    cdef double num, den, wgt, v, d, center
    for dy in range(-radius, radius + 1):
        for dx in range(-radius, radius + 1):
            spw[dy + radius, dx + radius] = exp((dy * dy + dx * dx) * inv_ss)
    for y in range(h):
        for x in range(w):
            center = img[y, x]
            num = 0.0
            den = 0.0
            for dy in range(-radius, radius + 1):
                yy = y + dy
                if yy < 0:
                    yy = 0
                elif yy >= h:
                    yy = h - 1
                for dx in range(-radius, radius + 1):
                    xx = x + dx
                    if xx < 0:
                        xx = 0
                    elif xx >= w:
                        xx = w - 1
                    v = img[yy, xx]
                    d = v - center
                    wgt = spw[dy + radius, dx + radius] * exp(d * d * inv_sr)
                    num += wgt * v
                    den += wgt
            out[y, x] = num / den
    return out_arr


def local_mean_std(cnp.ndarray img_in, int radius):
    cdef double[:, ::1] img = np.ascontiguousarray(img_in)
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1]
    mean_arr = np.zeros((h, w))
    std_arr = np.zeros((h, w))
    cdef double[:, ::1] mean = mean_arr
    cdef double[:, ::1] std = std_arr
    cdef double k2 = <double>((2 * radius + 1) * (2 * radius + 1))
    cdef Py_ssize_t y, x, dy, dx, yy, xx
    cdef double s, s2, v, m, var
    for y in range(h):
        for x in range(w):
            s = 0.0
            s2 = 0.0
            for dy in range(-radius, radius + 1):
                yy = y + dy
                if yy < 0:
                    yy = 0
                elif yy >= h:
                    yy = h - 1
                for dx in range(-radius, radius + 1):
                    xx = x + dx
                    if xx < 0:
                        xx = 0
                    elif xx >= w:
                        xx = w - 1
                    v = img[yy, xx]
                    s += v
                    s2 += v * v
            m = s / k2
            var = s2 / k2 - m * m
            if var < 0.0:
                var = 0.0
            mean[y, x] = m
            std[y, x] = sqrt(var)
    return mean_arr, std_arr
