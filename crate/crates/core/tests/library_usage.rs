use pointproc::{process, Kernel, NatDist, Region, SeedState, Universe};

#[test]
fn compound_count_from_the_readme() -> pointproc::Result<()> {
    let n = process::from_poisson(3.0)?;
    let x = process::from_nat_dist(&NatDist::new([(1, 0.5), (2, 0.5)])?)?;
    let gamma = n.bind(&Kernel::constant(x))?;
    let star = Region::all(Universe::Unit1);
    assert!((gamma.intensity().eval(&star)? - 4.5).abs() < 1e-9);
    let a = gamma.sample(SeedState::new(1))?;
    assert_eq!(a, gamma.sample(SeedState::new(1))?);
    Ok(())
}

#[test]
fn compile_matches_constructors() -> pointproc::Result<()> {
    let p = pointproc::dsl::compile("poisson(10, rect(0,0,1,1))")?;
    let q = process::poisson_pp(10.0, &Region::all(Universe::UnitSquare))?;
    for i in 0..5 {
        assert_eq!(
            p.sample(SeedState::new(4).child(i))?,
            q.sample(SeedState::new(4).child(i))?
        );
    }
    Ok(())
}
