//! Certifies which asymptotic regime a domain belongs to, including the
//! two negative controls.

use std::f64::consts::FRAC_PI_4;

use harmonic_growth::geometry::{certify_conelike, certify_cylinderlike, ConeWindow, CylinderWindow, DomainSpec};

fn main() -> harmonic_growth::Result<()> {
    let ts = [10.0, 100.0, 1e3, 1e4];
    let paraboloid = DomainSpec::paraboloid(1.0, 0.5);
    let cone = DomainSpec::cone(FRAC_PI_4);

    let report = certify_cylinderlike(&paraboloid, &ts, CylinderWindow::default())?;
    println!("paraboloid, cylinder-like: {}", report.verdict());
    report.write_csv(std::io::stdout())?;

    let report = certify_conelike(&cone, &ts, ConeWindow::default())?;
    println!("cone, cone-like: {}", report.verdict());
    report.write_csv(std::io::stdout())?;

    let cross = certify_cylinderlike(&cone, &ts, CylinderWindow::default())?;
    println!("cone, cylinder-like: {} {:?}", cross.verdict(), cross.flags);
    let cross = certify_conelike(&paraboloid, &ts, ConeWindow::default())?;
    println!("paraboloid, cone-like: {} {:?}", cross.verdict(), cross.flags);
    Ok(())
}
