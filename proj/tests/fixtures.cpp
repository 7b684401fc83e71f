#include "fixtures.hpp"

#include "fsr/format.hpp"

namespace fsrtest {

using fsr::ChartVertex;
using fsr::FsrSpec;

fsr::FsrSpec tri2_rule() {
    const char* text = R"(
fsr tri2
orientation preserving
edge a -> b-
edge b -> b+
edge c -> c+ c-
tile W sides a+ b+ c+ {
  vertex c0 corner 0
  vertex c1 corner 1
  vertex c2 corner 2
  vertex sp side 2 pos 1
  subedge s0 c0 c1
  subedge s1 c1 c2
  subedge s2a c2 sp
  subedge s2b sp c0
  subedge m sp c1
  subtile P type S offset 0 boundary s2b+ s0+ m-
  subtile Q type W offset 0 boundary m+ s1+ s2a+
}
tile S sides c- b- a- {
  vertex c0 corner 0
  vertex c1 corner 1
  vertex c2 corner 2
  vertex sp side 0 pos 1
  subedge s0a c0 sp
  subedge s0b sp c1
  subedge s1 c1 c2
  subedge s2 c2 c0
  subedge m sp c2
  subtile P type S offset 0 boundary s0b+ s1+ m-
  subtile Q type W offset 0 boundary m+ s2+ s0a+
}
)";
    return fsr::parse_fsr(text);
}

fsr::FsrSpec pillow2x2_rule() {
    const char* text = R"(
fsr pillow2x2
orientation preserving
edge a -> a+ a-
edge b -> d- d+
edge c -> a+ a-
edge d -> d- d+
tile W sides a+ b+ c+ d+ {
  vertex c0 corner 0
  vertex c1 corner 1
  vertex c2 corner 2
  vertex c3 corner 3
  vertex sp0 side 0 pos 1
  vertex sp1 side 1 pos 1
  vertex sp2 side 2 pos 1
  vertex sp3 side 3 pos 1
  vertex ctr interior
  subedge s0a c0 sp0
  subedge s0b sp0 c1
  subedge s1a c1 sp1
  subedge s1b sp1 c2
  subedge s2a c2 sp2
  subedge s2b sp2 c3
  subedge s3a c3 sp3
  subedge s3b sp3 c0
  subedge h1 sp3 ctr
  subedge h2 ctr sp1
  subedge v1 sp0 ctr
  subedge v2 ctr sp2
  subtile Q00 type W offset 0 boundary s0a+ v1+ h1- s3b+
  subtile Q10 type S offset 3 boundary s0b+ s1a+ h2- v1-
  subtile Q11 type W offset 2 boundary h2+ s1b+ s2a+ v2-
  subtile Q01 type S offset 1 boundary h1+ v2+ s2b+ s3a+
}
tile S sides d- c- b- a- {
  vertex c0 corner 0
  vertex c1 corner 1
  vertex c2 corner 2
  vertex c3 corner 3
  vertex sp0 side 0 pos 1
  vertex sp1 side 1 pos 1
  vertex sp2 side 2 pos 1
  vertex sp3 side 3 pos 1
  vertex ctr interior
  subedge s0a c0 sp0
  subedge s0b sp0 c1
  subedge s1a c1 sp1
  subedge s1b sp1 c2
  subedge s2a c2 sp2
  subedge s2b sp2 c3
  subedge s3a c3 sp3
  subedge s3b sp3 c0
  subedge h1 sp3 ctr
  subedge h2 ctr sp1
  subedge v1 sp0 ctr
  subedge v2 ctr sp2
  subtile R00 type S offset 0 boundary s0a+ v1+ h1- s3b+
  subtile R10 type W offset 3 boundary s0b+ s1a+ h2- v1-
  subtile R11 type S offset 2 boundary h2+ s1b+ s2a+ v2-
  subtile R01 type W offset 1 boundary h1+ v2+ s2b+ s3a+
}
)";
    return fsr::parse_fsr(text);
}

fsr::FsrSpec expansion_rule() {
    const char* text = R"(
fsr expansion_ring
orientation preserving
edge a -> a+ b+
edge b -> c+ a+
edge c -> b+ c+
tile W sides a+ b+ c+ {
  vertex c0 corner 0
  vertex c1 corner 1
  vertex c2 corner 2
  vertex p0_1 side 0 pos 1
  vertex p1_1 side 1 pos 1
  vertex p2_1 side 2 pos 1
  vertex u0 interior
  vertex u1 interior
  vertex u2 interior
  vertex u3 interior
  vertex u4 interior
  vertex u5 interior
  subedge s0 c0 p0_1
  subedge s1 c0 p2_1
  subedge s2 c0 u0
  subedge s3 c0 u5
  subedge s4 p0_1 c1
  subedge s5 p0_1 u0
  subedge s6 p0_1 u1
  subedge s7 c1 p1_1
  subedge s8 c1 u1
  subedge s9 c1 u2
  subedge s10 p1_1 c2
  subedge s11 p1_1 u2
  subedge s12 p1_1 u3
  subedge s13 c2 p2_1
  subedge s14 c2 u3
  subedge s15 c2 u4
  subedge s16 p2_1 u4
  subedge s17 p2_1 u5
  subedge s18 u0 u1
  subedge s19 u0 u2
  subedge s20 u0 u4
  subedge s21 u0 u5
  subedge s22 u1 u2
  subedge s23 u2 u3
  subedge s24 u2 u4
  subedge s25 u3 u4
  subedge s26 u4 u5
  subtile f0 type W offset 0 boundary s0+ s5+ s2-
  subtile f1 type W offset 1 boundary s4+ s8+ s6-
  subtile f2 type W offset 2 boundary s7+ s11+ s9-
  subtile f3 type W offset 0 boundary s10+ s14+ s12-
  subtile f4 type W offset 1 boundary s13+ s16+ s15-
  subtile f5 type W offset 2 boundary s1- s3+ s17-
  subtile f6 type S offset 1 boundary s5- s6+ s18-
  subtile f7 type S offset 0 boundary s8- s9+ s22-
  subtile f8 type S offset 2 boundary s11- s12+ s23-
  subtile f9 type S offset 1 boundary s14- s15+ s25-
  subtile f10 type S offset 0 boundary s16- s17+ s26-
  subtile f11 type S offset 2 boundary s3- s2+ s21+
  subtile f12 type W offset 2 boundary s18+ s22+ s19-
  subtile f13 type W offset 1 boundary s23+ s25+ s24-
  subtile f14 type W offset 0 boundary s26+ s21- s20+
  subtile f15 type S offset 1 boundary s19+ s24+ s20-
}
tile S sides c- b- a- {
  vertex c0 corner 0
  vertex c1 corner 1
  vertex c2 corner 2
  vertex p0_1 side 0 pos 1
  vertex p1_1 side 1 pos 1
  vertex p2_1 side 2 pos 1
  vertex u0 interior
  vertex u1 interior
  vertex u2 interior
  vertex u3 interior
  vertex u4 interior
  vertex u5 interior
  subedge s0 c0 p0_1
  subedge s1 c0 p2_1
  subedge s2 c0 u0
  subedge s3 c0 u5
  subedge s4 p0_1 c1
  subedge s5 p0_1 u0
  subedge s6 p0_1 u1
  subedge s7 c1 p1_1
  subedge s8 c1 u1
  subedge s9 c1 u2
  subedge s10 p1_1 c2
  subedge s11 p1_1 u2
  subedge s12 p1_1 u3
  subedge s13 c2 p2_1
  subedge s14 c2 u3
  subedge s15 c2 u4
  subedge s16 p2_1 u4
  subedge s17 p2_1 u5
  subedge s18 u0 u1
  subedge s19 u0 u2
  subedge s20 u0 u4
  subedge s21 u0 u5
  subedge s22 u1 u2
  subedge s23 u2 u3
  subedge s24 u2 u4
  subedge s25 u3 u4
  subedge s26 u4 u5
  subtile f0 type S offset 0 boundary s0+ s5+ s2-
  subtile f1 type S offset 1 boundary s4+ s8+ s6-
  subtile f2 type S offset 2 boundary s7+ s11+ s9-
  subtile f3 type S offset 0 boundary s10+ s14+ s12-
  subtile f4 type S offset 1 boundary s13+ s16+ s15-
  subtile f5 type S offset 2 boundary s1- s3+ s17-
  subtile f6 type W offset 1 boundary s5- s6+ s18-
  subtile f7 type W offset 0 boundary s8- s9+ s22-
  subtile f8 type W offset 2 boundary s11- s12+ s23-
  subtile f9 type W offset 1 boundary s14- s15+ s25-
  subtile f10 type W offset 0 boundary s16- s17+ s26-
  subtile f11 type W offset 2 boundary s3- s2+ s21+
  subtile f12 type S offset 2 boundary s18+ s22+ s19-
  subtile f13 type S offset 1 boundary s23+ s25+ s24-
  subtile f14 type S offset 0 boundary s26+ s21- s20+
  subtile f15 type W offset 1 boundary s19+ s24+ s20-
}
)";
    return fsr::parse_fsr(text);
}

}  // namespace fsrtest

namespace fsrtest2 {

fsr::FsrSpec pillow_identity_rule() {
    const char* text = R"(
fsr pillow_identity
orientation preserving
edge a -> a+
edge b -> b+
tile T sides a+ a- b+ b- {
  vertex c0 corner 0
  vertex c1 corner 1
  vertex c2 corner 2
  vertex c3 corner 3
  subedge s0 c0 c1
  subedge s1 c2 c1
  subedge s2 c2 c3
  subedge s3 c0 c3
  subtile f type T offset 0 boundary s0+ s1- s2+ s3-
}
)";
    return fsr::parse_fsr(text);
}

}  // namespace fsrtest2
