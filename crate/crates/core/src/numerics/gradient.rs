use super::Field;

/// Nodal gradient: central differences inside, second-order one-sided
/// differences at the two endpoints. Exact for quadratics.
pub fn central_gradient(field: &Field) -> Field {
    let grid = *field.grid();
    let dx = grid.spacing();
    let u = field.values();
    let n = u.len() - 1;
    let mut g = vec![0.0; n + 1];
    for j in 1..n {
        g[j] = (u[j + 1] - u[j - 1]) / (2.0 * dx);
    }
    g[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dx);
    g[n] = (3.0 * u[n] - 4.0 * u[n - 1] + u[n - 2]) / (2.0 * dx);
    Field::new(grid, g).expect("finite input yields finite gradient")
}
