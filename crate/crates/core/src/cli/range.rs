//! Value lists on the command line: comma-separated items, each a number,
//! `start:stop:step`, or `start:stop:logN` (N log-spaced points).

pub fn parse_values(text: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        if item.is_empty() {
            return Err(format!("empty item in `{text}`"));
        }
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(number(v)?),
            [a, b, step] => out.extend(range(number(a)?, number(b)?, step)?),
            _ => return Err(format!("`{item}` is neither a number nor start:stop:step")),
        }
    }
    Ok(out)
}

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(v)
}

fn range(start: f64, stop: f64, step: &str) -> Result<Vec<f64>, String> {
    if let Some(n) = step.strip_prefix("log") {
        let n: usize = n.parse().map_err(|_| format!("`{step}` needs an integer point count"))?;
        if n < 2 || !(start > 0.0 && stop > 0.0) {
            return Err(format!("log range needs N >= 2 and positive ends, got {start}:{stop}:{step}"));
        }
        let (la, lb) = (start.ln(), stop.ln());
        return Ok((0..n)
            .map(|i| match i {
                0 => start,
                i if i == n - 1 => stop,
                i => (la + (lb - la) * i as f64 / (n - 1) as f64).exp(),
            })
            .collect());
    }
    let step = number(step)?;
    if !(step > 0.0) || stop < start {
        return Err(format!("range {start}:{stop}:{step} needs step > 0 and stop >= start"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    if count > 1_000_000 {
        return Err(format!("range {start}:{stop}:{step} has too many points"));
    }
    Ok((0..=count).map(|i| start + step * i as f64).collect())
}
