"""Reference FSIM/FSIMc written directly from the published MATLAB
construction (FeatureSIM.m with phasecong2), used to freeze expected values
for the C++ implementation.

Usage: dump_pairs | python3 fsim_reference.py
"""
import sys

import numpy as np


def lowpassfilter(rows, cols, cutoff, n):
    if cols % 2:
        xr = np.arange(-(cols - 1) / 2, (cols - 1) / 2 + 1) / (cols - 1)
    else:
        xr = np.arange(-cols / 2, cols / 2) / cols
    if rows % 2:
        yr = np.arange(-(rows - 1) / 2, (rows - 1) / 2 + 1) / (rows - 1)
    else:
        yr = np.arange(-rows / 2, rows / 2) / rows
    x, y = np.meshgrid(xr, yr)
    radius = np.sqrt(x ** 2 + y ** 2)
    return np.fft.ifftshift(1.0 / (1.0 + (radius / cutoff) ** (2 * n)))


def phasecong2(im):
    nscale, norient = 4, 4
    min_wave, mult, sigma_onf, dtheta_on_sigma, k, eps = 6, 2, 0.55, 1.2, 2.0, 1e-4
    theta_sigma = np.pi / norient / dtheta_on_sigma
    rows, cols = im.shape
    imagefft = np.fft.fft2(im)

    if cols % 2:
        xr = np.arange(-(cols - 1) / 2, (cols - 1) / 2 + 1) / (cols - 1)
    else:
        xr = np.arange(-cols / 2, cols / 2) / cols
    if rows % 2:
        yr = np.arange(-(rows - 1) / 2, (rows - 1) / 2 + 1) / (rows - 1)
    else:
        yr = np.arange(-rows / 2, rows / 2) / rows
    x, y = np.meshgrid(xr, yr)
    radius = np.fft.ifftshift(np.sqrt(x ** 2 + y ** 2))
    theta = np.fft.ifftshift(np.arctan2(-y, x))
    radius[0, 0] = 1
    sintheta, costheta = np.sin(theta), np.cos(theta)

    lp = lowpassfilter(rows, cols, 0.45, 15)
    log_gabor = []
    for s in range(nscale):
        fo = 1.0 / (min_wave * mult ** s)
        lg = np.exp(-(np.log(radius / fo)) ** 2 / (2 * np.log(sigma_onf) ** 2)) * lp
        lg[0, 0] = 0
        log_gabor.append(lg)

    spread = []
    for o in range(norient):
        angl = o * np.pi / norient
        ds = sintheta * np.cos(angl) - costheta * np.sin(angl)
        dc = costheta * np.cos(angl) + sintheta * np.sin(angl)
        dtheta = np.abs(np.arctan2(ds, dc))
        spread.append(np.exp(-dtheta ** 2 / (2 * theta_sigma ** 2)))

    energy_all = np.zeros((rows, cols))
    an_all = np.zeros((rows, cols))
    for o in range(norient):
        sum_e = np.zeros((rows, cols))
        sum_o = np.zeros((rows, cols))
        sum_an = np.zeros((rows, cols))
        energy = np.zeros((rows, cols))
        eo = []
        ifft_filters = []
        for s in range(nscale):
            filt = log_gabor[s] * spread[o]
            ifft_filters.append(np.real(np.fft.ifft2(filt)) * np.sqrt(rows * cols))
            resp = np.fft.ifft2(imagefft * filt)
            eo.append(resp)
            an = np.abs(resp)
            sum_an += an
            sum_e += np.real(resp)
            sum_o += np.imag(resp)
            if s == 0:
                em_n = np.sum(filt ** 2)
        x_energy = np.sqrt(sum_e ** 2 + sum_o ** 2) + eps
        mean_e = sum_e / x_energy
        mean_o = sum_o / x_energy
        for s in range(nscale):
            e, od = np.real(eo[s]), np.imag(eo[s])
            energy += e * mean_e + od * mean_o - np.abs(e * mean_o - od * mean_e)
        median_e2n = np.median(np.abs(eo[0]) ** 2)
        mean_e2n = -median_e2n / np.log(0.5)
        noise_power = mean_e2n / em_n
        est_sum_an2 = sum(f ** 2 for f in ifft_filters)
        est_sum_aiaj = np.zeros((rows, cols))
        for si in range(nscale - 1):
            for sj in range(si + 1, nscale):
                est_sum_aiaj += ifft_filters[si] * ifft_filters[sj]
        est_noise_energy2 = 2 * noise_power * np.sum(est_sum_an2) + 4 * noise_power * np.sum(est_sum_aiaj)
        tau = np.sqrt(est_noise_energy2 / 2)
        est_noise_energy = tau * np.sqrt(np.pi / 2)
        est_noise_sigma = np.sqrt((2 - np.pi / 2) * tau ** 2)
        t = (est_noise_energy + k * est_noise_sigma) / 1.7
        energy_all += np.maximum(energy - t, 0)
        an_all += sum_an
    return energy_all / an_all


def conv2_same(a, kernel):
    # Direct definition of MATLAB conv2(a, kernel, 'same') for a 3x3 kernel.
    rows, cols = a.shape
    padded = np.zeros((rows + 2, cols + 2))
    padded[1:-1, 1:-1] = a
    out = np.zeros_like(a)
    for u in (-1, 0, 1):
        for v in (-1, 0, 1):
            out += kernel[u + 1, v + 1] * padded[1 - u:1 - u + rows, 1 - v:1 - v + cols]
    return out


def feature_sim(rgb1, rgb2):
    rgb1 = rgb1 * 255.0
    rgb2 = rgb2 * 255.0

    def yiq(img):
        r, g, b = img[..., 0], img[..., 1], img[..., 2]
        return (0.299 * r + 0.587 * g + 0.114 * b,
                0.596 * r - 0.274 * g - 0.322 * b,
                0.211 * r - 0.523 * g + 0.312 * b)

    y1, i1, q1 = yiq(rgb1)
    y2, i2, q2 = yiq(rgb2)
    rows, cols = y1.shape
    f = max(1, int(np.floor(min(rows, cols) / 256 + 0.5)))
    assert f == 1, "fixtures are below the downsampling size"

    pc1, pc2 = phasecong2(y1), phasecong2(y2)
    dx = np.array([[3, 0, -3], [10, 0, -10], [3, 0, -3]]) / 16.0
    dy = np.array([[3, 10, 3], [0, 0, 0], [-3, -10, -3]]) / 16.0
    gm1 = np.sqrt(conv2_same(y1, dx) ** 2 + conv2_same(y1, dy) ** 2)
    gm2 = np.sqrt(conv2_same(y2, dx) ** 2 + conv2_same(y2, dy) ** 2)

    t1, t2, t3, t4, lam = 0.85, 160, 200, 200, 0.03
    pc_sim = (2 * pc1 * pc2 + t1) / (pc1 ** 2 + pc2 ** 2 + t1)
    g_sim = (2 * gm1 * gm2 + t2) / (gm1 ** 2 + gm2 ** 2 + t2)
    pcm = np.maximum(pc1, pc2)
    sim = g_sim * pc_sim * pcm
    fsim = np.sum(sim) / np.sum(pcm)
    i_sim = (2 * i1 * i2 + t3) / (i1 ** 2 + i2 ** 2 + t3)
    q_sim = (2 * q1 * q2 + t4) / (q1 ** 2 + q2 ** 2 + t4)
    chroma = np.real(np.power((i_sim * q_sim).astype(complex), lam))
    fsimc = np.sum(sim * chroma) / np.sum(pcm)
    return fsim, fsimc


def read_image(lines):
    rows, cols = map(int, next(lines).split())
    data = np.array([[float(v) for v in next(lines).split()] for _ in range(rows * cols)])
    return data.reshape(rows, cols, 3)


def main():
    lines = iter(sys.stdin.read().splitlines())
    while True:
        try:
            a = read_image(lines)
        except StopIteration:
            break
        b = read_image(lines)
        fsim, fsimc = feature_sim(a, b)
        print(f"fsim={fsim:.12f} fsimc={fsimc:.12f}")


if __name__ == "__main__":
    main()
