use bergkern::Complex64;

/// `RE` or `RE,IM`.
pub fn complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|_| format!("not a number: `{p}`"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected RE or RE,IM, got `{s}`")),
    }
}

/// Semicolon-separated complex coordinates: `RE,IM;RE,IM;…`.
pub fn point(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(';').map(complex).collect()
}

/// Comma-separated list of values.
pub fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| format!("invalid list entry `{p}`")))
        .collect()
}
