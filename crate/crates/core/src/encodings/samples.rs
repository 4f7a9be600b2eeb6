//! Small well-typed source judgements, one corpus per source system.

pub const KPT: &[&str] = &[
    "given x : !1() |- x<>",
    "given x : ?1() |- x().0",
    "given x : <>1() |- x<> | x().0",
    "given |- new x : <>1(). (x<> | x().0)",
    "given a : !1(?1()), b : ?1() |- a<b>",
    "given a : ?1(!1()) |- a(y). y<>",
    "given s : ?w(!1()) |- *s(k). k<>",
    "given s : !w(!1()) |- new r : <>1(). (s<r> | r().0)",
    "given |- new s : <>w(!1()). (*s(k). k<> | new r : <>1(). (s<r> | r().0))",
    "given x : !1(), y : ?1() |- y(). x<>",
    "given a : !w(), b : !w() |- a<> | b<> | a<>",
    "given a : ?1(!1(), !1()) |- a(y, z). (y<> | z<>)",
];

/// Servers take empty payloads: a received pair leaves a `?` capability on
/// the fresh second name, which nothing in the source can discharge.
pub const HYB: &[&str] = &[
    "given x : ()! |- *x().0",
    "given x : ()? |- x<()>",
    "given x : ()!, z : ()? |- *x(). z<()>",
    "given |- new x : ()!. (*x().0 | x<()>)",
    "given x : ()?, y : ()? |- x<()> | y<()>",
    "given x : (()?)? |- x<(y)>",
    "given x : (()?)? |- x<(y)>. y<()>",
    "given x : ()!, y : ()! |- *x().0 | *y().0",
    "given x : ()?, z : ()! |- *z(). x<()>. x<()>",
    "given |- new x : ()!. new z : ()!. (*x(). z<()> | *z().0 | x<()>)",
    "given x : ()? |- x<()>. x<()>. x<()>",
    "given x : (()?, ()?)? |- x<(a, b)>",
    "given x : ((()?)?)? |- x<(y)>",
    "given x : ()!, w : ()? |- *x(). (w<()> | w<()>)",
];

/// Written with the channel directions the translation assigns: the offered
/// end of `1` and `A⊗B` receives, a used `1` or `A⊗B` sends.
pub const DCPT: &[&str] = &[
    "given |- x().0 :: x : 1",
    "given y : 1 |- y<>. x().0 :: x : 1",
    "given y : 1 |- x(). y<> :: x : 1",
    "given y : 1, w : 1 |- y<>. w<>. x().0 :: x : 1",
    "given |- x(y). (y().0 | x().0) :: x : 1 (*) 1",
    "given |- x(y). (y().0 | x(z). (z().0 | x().0)) :: x : 1 (*) (1 (*) 1)",
    "given a : 1 |- x(y). (y().0 | a<>. x().0) :: x : 1 (*) 1",
    "given x : 1 (*) 1 |- new v : 1. x<v>. v<>. x<>. z().0 :: z : 1",
    "given y : 1 (*) 1 |- new v : bot. (v<>. 0 | y<v>. y<>. x().0) :: x : 1",
    "given x : 1 (%) 1, w : bot |- x(y). (y<>. w().0 | x<>. z().0) :: z : 1",
    "given x : 1 (%) 1, w : bot |- x(y). (y<> | x<> | w().0 | z().0) :: z : 1",
    "given |- new x : 1. (x().0 | x<>. z().0) :: z : 1",
    "given |- new x : 1 (*) 1. (x(y). (y().0 | x().0) | new v : 1. x<v>. v<>. x<>. z().0) :: z : 1",
];
