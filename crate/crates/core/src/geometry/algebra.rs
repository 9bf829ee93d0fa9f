//! Quaternion and octonion multiplication on plain coordinate arrays (index 0 is the real part).

pub type Quaternion = [f64; 4];
pub type Octonion = [f64; 8];

pub fn quaternion_mul(a: &Quaternion, b: &Quaternion) -> Quaternion {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

/// Lines of the Fano plane: `e_a e_b = e_c` for each cyclic rotation of `(a, b, c)`.
pub const FANO_TRIPLES: [(usize, usize, usize); 7] =
    [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)];

// TABLE[a][b] = (sign, index) with e_a e_b = sign * e_index
const fn build_table() -> [[(i8, u8); 8]; 8] {
    let mut t = [[(0i8, 0u8); 8]; 8];
    let mut a = 0;
    while a < 8 {
        t[0][a] = (1, a as u8);
        t[a][0] = (1, a as u8);
        if a > 0 {
            t[a][a] = (-1, 0);
        }
        a += 1;
    }
    let mut i = 0;
    while i < 7 {
        let (a, b, c) = FANO_TRIPLES[i];
        let rot = [(a, b, c), (b, c, a), (c, a, b)];
        let mut r = 0;
        while r < 3 {
            let (x, y, z) = rot[r];
            t[x][y] = (1, z as u8);
            t[y][x] = (-1, z as u8);
            r += 1;
        }
        i += 1;
    }
    t
}

const TABLE: [[(i8, u8); 8]; 8] = build_table();

pub fn octonion_mul(a: &Octonion, b: &Octonion) -> Octonion {
    let mut out = [0.0; 8];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let (s, k) = TABLE[i][j];
            out[k as usize] += s as f64 * ai * bj;
        }
    }
    out
}

pub fn octonion_conj(a: &Octonion) -> Octonion {
    let mut c = a.map(|v| -v);
    c[0] = a[0];
    c
}

pub fn octonion_norm2(a: &Octonion) -> f64 {
    a.iter().map(|v| v * v).sum()
}

/// `a⁻¹ = ā/|a|²`.
pub fn octonion_inv(a: &Octonion) -> Octonion {
    let n = octonion_norm2(a);
    octonion_conj(a).map(|v| v / n)
}

pub fn unit_octonion(l: usize) -> Octonion {
    let mut e = [0.0; 8];
    e[l] = 1.0;
    e
}
