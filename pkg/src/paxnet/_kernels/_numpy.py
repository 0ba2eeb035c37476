"""Pure numpy implementations of the hot kernels.

Same call surface as the compiled core (`_core.pyx`); selected at import
time by `paxnet._kernels` when the extension is unavailable or when
PAXNET_BACKEND=numpy. Everything is float64, NCHW, C-contiguous.
"""

import math

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def conv2d_forward(x, w, stride, pad):
    n, c, h, wd = x.shape
    f, _, kh, kw = w.shape
    if pad:
        x = np.pad(x, ((0, 0), (0, 0), (pad, pad), (pad, pad)))
    win = sliding_window_view(x, (kh, kw), axis=(2, 3))[:, :, ::stride, ::stride]
    y = np.einsum("nchwkl,fckl->nfhw", win, w, optimize=True)
    return np.ascontiguousarray(y)


def conv2d_backward_weight(x, gy, stride, pad, kh, kw):
    if pad:
        x = np.pad(x, ((0, 0), (0, 0), (pad, pad), (pad, pad)))
    win = sliding_window_view(x, (kh, kw), axis=(2, 3))[:, :, ::stride, ::stride]
    gw = np.einsum("nchwkl,nfhw->fckl", win, gy, optimize=True)
    return np.ascontiguousarray(gw)


def conv2d_backward_input(gy, w, stride, pad, h, wd):
    # full correlation of the stride-dilated output gradient with the
    # spatially flipped kernel, then crop the forward padding
    n, f, oh, ow = gy.shape
    _, c, kh, kw = w.shape
    hd = (oh - 1) * stride + 1
    wdl = (ow - 1) * stride + 1
    g = np.zeros((n, f, hd + 2 * (kh - 1), wdl + 2 * (kw - 1)))
    g[:, :, kh - 1:kh - 1 + hd:stride, kw - 1:kw - 1 + wdl:stride] = gy
    wr = w[:, :, ::-1, ::-1]
    win = sliding_window_view(g, (kh, kw), axis=(2, 3))
    full = np.einsum("nfhwkl,fckl->nchw", win, wr, optimize=True)
    gx = np.zeros((n, c, h + 2 * pad, wd + 2 * pad))
    gx[:, :, :full.shape[2], :full.shape[3]] = full
    if pad:
        gx = gx[:, :, pad:pad + h, pad:pad + wd]
    return np.ascontiguousarray(gx)


def maxpool2d_forward(x, k, stride):
    n, c, h, w = x.shape
    oh = (h - k) // stride + 1
    ow = (w - k) // stride + 1
    win = sliding_window_view(x, (k, k), axis=(2, 3))[:, :, ::stride, ::stride]
    flat = win.reshape(n, c, oh, ow, k * k)
    arg = flat.argmax(axis=-1)  # first max wins ties, matching the C core
    y = np.take_along_axis(flat, arg[..., None], axis=-1)[..., 0]
    ah = (np.arange(oh) * stride)[None, None, :, None] + arg // k
    aw = (np.arange(ow) * stride)[None, None, None, :] + arg % k
    idx = (ah * w + aw).astype(np.int64)
    return np.ascontiguousarray(y), np.ascontiguousarray(idx)


def maxpool2d_backward(gy, idx, h, w):
    n, c = gy.shape[:2]
    gx = np.zeros((n * c, h * w))
    rows = np.repeat(np.arange(n * c), idx[0, 0].size)
    np.add.at(gx, (rows, idx.reshape(n * c, -1).ravel()), gy.reshape(n * c, -1).ravel())
    return gx.reshape(n, c, h, w)


def bilateral(img, sigma_space, sigma_range, radius):
    h, w = img.shape
    p = np.pad(img, radius, mode="edge")
    num = np.zeros_like(img)
    den = np.zeros_like(img)
    inv_ss = -0.5 / (sigma_space * sigma_space)
    inv_sr = -0.5 / (sigma_range * sigma_range)
    for dy in range(-radius, radius + 1):
        for dx in range(-radius, radius + 1):
            sw = math.exp((dy * dy + dx * dx) * inv_ss)
            shifted = p[radius + dy:radius + dy + h, radius + dx:radius + dx + w]
            d = shifted - img
            wgt = sw * np.exp(d * d * inv_sr)
            num += wgt * shifted
            den += wgt
    return num / den


def local_mean_std(img, radius):
    from scipy.ndimage import uniform_filter

    size = 2 * radius + 1
    mean = uniform_filter(img, size, mode="nearest")
    mean_sq = uniform_filter(img * img, size, mode="nearest")
    var = np.maximum(mean_sq - mean * mean, 0.0)
    return mean, np.sqrt(var)
