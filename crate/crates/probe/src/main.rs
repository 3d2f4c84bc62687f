fn main() {
    let i1 = wright_lab::special::bessel_i(1.0, 2.0, 1e-12).unwrap();
    println!("I1(2) = {:.20e} want 1.5906368546373290634", i1.value);
    println!("rel {:e}", (i1.value - 1.5906368546373291) / i1.value);
    let i0 = wright_lab::special::bessel_i(0.0, 2.0, 1e-12).unwrap();
    println!("I0(2) = {:.20e} want 2.2795853023360672674", i0.value);
    let lg = wright_lab::special::log_gamma(1.0).unwrap();
    println!("lnGamma(1) = {lg:e}");
    let lg2 = wright_lab::special::log_gamma(2.0).unwrap();
    println!("lnGamma(2) = {lg2:e}");
    for k in 1..8 {
        let x = k as f64;
        println!("lnGamma({x}) err vs ln((x-1)!): {:e}", wright_lab::special::log_gamma(x).unwrap() - ((1..k).product::<u64>() as f64).ln());
    }
}
