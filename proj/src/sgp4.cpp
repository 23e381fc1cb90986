// SGP4/SDP4 after the 2020 revision of the reference implementation by
// Vallado et al. Variable names follow that code so the two can be read side
// by side.
#include "megalink/sgp4.hpp"

#include <cmath>

#include <fmt/format.h>

#include "megalink/constants.hpp"

namespace megalink {
namespace {

constexpr double pi = kPi;
constexpr double twopi = kTwoPi;
constexpr double x2o3 = 2.0 / 3.0;
constexpr double temp4 = 1.5e-12;

constexpr double radiusearthkm = wgs72::kRadiusKm;
constexpr double j2 = wgs72::kJ2;
constexpr double j3oj2 = wgs72::kJ3 / wgs72::kJ2;
constexpr double j4 = wgs72::kJ4;
double const xke = 60.0 / std::sqrt(radiusearthkm * radiusearthkm * radiusearthkm / wgs72::kMu);
double const tumin = 1.0 / xke;
double const vkmpersec = radiusearthkm * xke / 60.0;

// Products of dscom that dsinit needs but the propagator does not keep.
struct DscomResult {
    double snodm, cnodm, sinim, cosim, sinomm, cosomm, day, em, emsq, gam, rtemsq;
    double s1, s2, s3, s4, s5, s6, s7;
    double ss1, ss2, ss3, ss4, ss5, ss6, ss7;
    double sz1, sz2, sz3, sz11, sz12, sz13, sz21, sz22, sz23, sz31, sz32, sz33;
    double nm;
    double z1, z2, z3, z11, z12, z13, z21, z22, z23, z31, z32, z33;
};

// Mean elements threaded through the secular and periodic updates.
struct MeanState {
    double em, argpm, inclm, mm, nm, nodem;
};

}  // namespace

struct Sgp4Access {
    using P = Sgp4Propagator;

    static void dpper(P const& s, double t, bool init, double& ep, double& inclp, double& nodep,
                      double& argpp, double& mp)
    {
        constexpr double zns = 1.19459e-5;
        constexpr double zes = 0.01675;
        constexpr double znl = 1.5835218e-4;
        constexpr double zel = 0.05490;

        double zm = init ? s.zmos_ : s.zmos_ + zns * t;
        double zf = zm + 2.0 * zes * std::sin(zm);
        double sinzf = std::sin(zf);
        double f2 = 0.5 * sinzf * sinzf - 0.25;
        double f3 = -0.5 * sinzf * std::cos(zf);
        double const ses = s.se2_ * f2 + s.se3_ * f3;
        double const sis = s.si2_ * f2 + s.si3_ * f3;
        double const sls = s.sl2_ * f2 + s.sl3_ * f3 + s.sl4_ * sinzf;
        double const sghs = s.sgh2_ * f2 + s.sgh3_ * f3 + s.sgh4_ * sinzf;
        double const shs = s.sh2_ * f2 + s.sh3_ * f3;

        zm = init ? s.zmol_ : s.zmol_ + znl * t;
        zf = zm + 2.0 * zel * std::sin(zm);
        sinzf = std::sin(zf);
        f2 = 0.5 * sinzf * sinzf - 0.25;
        f3 = -0.5 * sinzf * std::cos(zf);
        double const sel = s.ee2_ * f2 + s.e3_ * f3;
        double const sil = s.xi2_ * f2 + s.xi3_ * f3;
        double const sll = s.xl2_ * f2 + s.xl3_ * f3 + s.xl4_ * sinzf;
        double const sghl = s.xgh2_ * f2 + s.xgh3_ * f3 + s.xgh4_ * sinzf;
        double const shll = s.xh2_ * f2 + s.xh3_ * f3;

        double pe = ses + sel;
        double pinc = sis + sil;
        double pl = sls + sll;
        double pgh = sghs + sghl;
        double ph = shs + shll;

        if (init) {
            return;
        }
        pe -= s.peo_;
        pinc -= s.pinco_;
        pl -= s.plo_;
        pgh -= s.pgho_;
        ph -= s.pho_;
        inclp += pinc;
        ep += pe;
        double const sinip = std::sin(inclp);
        double const cosip = std::cos(inclp);

        if (inclp >= 0.2) {
            ph /= sinip;
            pgh -= cosip * ph;
            argpp += pgh;
            nodep += ph;
            mp += pl;
        } else {
            // Lyddane modification for low inclinations.
            double const sinop = std::sin(nodep);
            double const cosop = std::cos(nodep);
            double alfdp = sinip * sinop;
            double betdp = sinip * cosop;
            double const dalf = ph * cosop + pinc * cosip * sinop;
            double const dbet = -ph * sinop + pinc * cosip * cosop;
            alfdp += dalf;
            betdp += dbet;
            nodep = std::fmod(nodep, twopi);
            double xls = mp + argpp + cosip * nodep;
            double const dls = pl + pgh - pinc * nodep * sinip;
            xls += dls;
            double const xnoh = nodep;
            nodep = std::atan2(alfdp, betdp);
            if (std::fabs(xnoh - nodep) > pi) {
                nodep += nodep < xnoh ? twopi : -twopi;
            }
            mp += pl;
            argpp = xls - mp - cosip * nodep;
        }
    }

    static DscomResult dscom(P& s, double epoch, double ep, double argpp, double tc, double inclp,
                             double nodep, double np)
    {
        constexpr double zes = 0.01675;
        constexpr double zel = 0.05490;
        constexpr double c1ss = 2.9864797e-6;
        constexpr double c1l = 4.7968065e-7;
        constexpr double zsinis = 0.39785416;
        constexpr double zcosis = 0.91744867;
        constexpr double zcosgs = 0.1945905;
        constexpr double zsings = -0.98088458;

        DscomResult o{};
        o.nm = np;
        o.em = ep;
        o.snodm = std::sin(nodep);
        o.cnodm = std::cos(nodep);
        o.sinomm = std::sin(argpp);
        o.cosomm = std::cos(argpp);
        o.sinim = std::sin(inclp);
        o.cosim = std::cos(inclp);
        o.emsq = o.em * o.em;
        double const betasq = 1.0 - o.emsq;
        o.rtemsq = std::sqrt(betasq);

        s.peo_ = s.pinco_ = s.plo_ = s.pgho_ = s.pho_ = 0.0;
        o.day = epoch + 18261.5 + tc / 1440.0;
        double const xnodce = std::fmod(4.5236020 - 9.2422029e-4 * o.day, twopi);
        double const stem = std::sin(xnodce);
        double const ctem = std::cos(xnodce);
        double const zcosil = 0.91375164 - 0.03568096 * ctem;
        double const zsinil = std::sqrt(1.0 - zcosil * zcosil);
        double const zsinhl = 0.089683511 * stem / zsinil;
        double const zcoshl = std::sqrt(1.0 - zsinhl * zsinhl);
        o.gam = 5.8351514 + 0.0019443680 * o.day;
        double zx = 0.39785416 * stem / zsinil;
        double const zy = zcoshl * ctem + 0.91744867 * zsinhl * stem;
        zx = std::atan2(zx, zy);
        zx = o.gam + zx - xnodce;
        double const zcosgl = std::cos(zx);
        double const zsingl = std::sin(zx);

        // First pass: solar terms; second pass: lunar terms.
        double zcosg = zcosgs;
        double zsing = zsings;
        double zcosi = zcosis;
        double zsini = zsinis;
        double zcosh = o.cnodm;
        double zsinh = o.snodm;
        double cc = c1ss;
        double const xnoi = 1.0 / o.nm;

        for (int lsflg = 1; lsflg <= 2; ++lsflg) {
            double const a1 = zcosg * zcosh + zsing * zcosi * zsinh;
            double const a3 = -zsing * zcosh + zcosg * zcosi * zsinh;
            double const a7 = -zcosg * zsinh + zsing * zcosi * zcosh;
            double const a8 = zsing * zsini;
            double const a9 = zsing * zsinh + zcosg * zcosi * zcosh;
            double const a10 = zcosg * zsini;
            double const a2 = o.cosim * a7 + o.sinim * a8;
            double const a4 = o.cosim * a9 + o.sinim * a10;
            double const a5 = -o.sinim * a7 + o.cosim * a8;
            double const a6 = -o.sinim * a9 + o.cosim * a10;

            double const x1 = a1 * o.cosomm + a2 * o.sinomm;
            double const x2 = a3 * o.cosomm + a4 * o.sinomm;
            double const x3 = -a1 * o.sinomm + a2 * o.cosomm;
            double const x4 = -a3 * o.sinomm + a4 * o.cosomm;
            double const x5 = a5 * o.sinomm;
            double const x6 = a6 * o.sinomm;
            double const x7 = a5 * o.cosomm;
            double const x8 = a6 * o.cosomm;

            o.z31 = 12.0 * x1 * x1 - 3.0 * x3 * x3;
            o.z32 = 24.0 * x1 * x2 - 6.0 * x3 * x4;
            o.z33 = 12.0 * x2 * x2 - 3.0 * x4 * x4;
            o.z1 = 3.0 * (a1 * a1 + a2 * a2) + o.z31 * o.emsq;
            o.z2 = 6.0 * (a1 * a3 + a2 * a4) + o.z32 * o.emsq;
            o.z3 = 3.0 * (a3 * a3 + a4 * a4) + o.z33 * o.emsq;
            o.z11 = -6.0 * a1 * a5 + o.emsq * (-24.0 * x1 * x7 - 6.0 * x3 * x5);
            o.z12 = -6.0 * (a1 * a6 + a3 * a5)
                    + o.emsq * (-24.0 * (x2 * x7 + x1 * x8) - 6.0 * (x3 * x6 + x4 * x5));
            o.z13 = -6.0 * a3 * a6 + o.emsq * (-24.0 * x2 * x8 - 6.0 * x4 * x6);
            o.z21 = 6.0 * a2 * a5 + o.emsq * (24.0 * x1 * x5 - 6.0 * x3 * x7);
            o.z22 = 6.0 * (a4 * a5 + a2 * a6)
                    + o.emsq * (24.0 * (x2 * x5 + x1 * x6) - 6.0 * (x4 * x7 + x3 * x8));
            o.z23 = 6.0 * a4 * a6 + o.emsq * (24.0 * x2 * x6 - 6.0 * x4 * x8);
            o.z1 = o.z1 + o.z1 + betasq * o.z31;
            o.z2 = o.z2 + o.z2 + betasq * o.z32;
            o.z3 = o.z3 + o.z3 + betasq * o.z33;
            o.s3 = cc * xnoi;
            o.s2 = -0.5 * o.s3 / o.rtemsq;
            o.s4 = o.s3 * o.rtemsq;
            o.s1 = -15.0 * o.em * o.s4;
            o.s5 = x1 * x3 + x2 * x4;
            o.s6 = x2 * x3 + x1 * x4;
            o.s7 = x2 * x4 - x1 * x3;

            if (lsflg == 1) {
                o.ss1 = o.s1;
                o.ss2 = o.s2;
                o.ss3 = o.s3;
                o.ss4 = o.s4;
                o.ss5 = o.s5;
                o.ss6 = o.s6;
                o.ss7 = o.s7;
                o.sz1 = o.z1;
                o.sz2 = o.z2;
                o.sz3 = o.z3;
                o.sz11 = o.z11;
                o.sz12 = o.z12;
                o.sz13 = o.z13;
                o.sz21 = o.z21;
                o.sz22 = o.z22;
                o.sz23 = o.z23;
                o.sz31 = o.z31;
                o.sz32 = o.z32;
                o.sz33 = o.z33;
                zcosg = zcosgl;
                zsing = zsingl;
                zcosi = zcosil;
                zsini = zsinil;
                zcosh = zcoshl * o.cnodm + zsinhl * o.snodm;
                zsinh = o.snodm * zcoshl - o.cnodm * zsinhl;
                cc = c1l;
            }
        }

        s.zmol_ = std::fmod(4.7199672 + 0.22997150 * o.day - o.gam, twopi);
        s.zmos_ = std::fmod(6.2565837 + 0.017201977 * o.day, twopi);

        s.se2_ = 2.0 * o.ss1 * o.ss6;
        s.se3_ = 2.0 * o.ss1 * o.ss7;
        s.si2_ = 2.0 * o.ss2 * o.sz12;
        s.si3_ = 2.0 * o.ss2 * (o.sz13 - o.sz11);
        s.sl2_ = -2.0 * o.ss3 * o.sz2;
        s.sl3_ = -2.0 * o.ss3 * (o.sz3 - o.sz1);
        s.sl4_ = -2.0 * o.ss3 * (-21.0 - 9.0 * o.emsq) * zes;
        s.sgh2_ = 2.0 * o.ss4 * o.sz32;
        s.sgh3_ = 2.0 * o.ss4 * (o.sz33 - o.sz31);
        s.sgh4_ = -18.0 * o.ss4 * zes;
        s.sh2_ = -2.0 * o.ss2 * o.sz22;
        s.sh3_ = -2.0 * o.ss2 * (o.sz23 - o.sz21);

        s.ee2_ = 2.0 * o.s1 * o.s6;
        s.e3_ = 2.0 * o.s1 * o.s7;
        s.xi2_ = 2.0 * o.s2 * o.z12;
        s.xi3_ = 2.0 * o.s2 * (o.z13 - o.z11);
        s.xl2_ = -2.0 * o.s3 * o.z2;
        s.xl3_ = -2.0 * o.s3 * (o.z3 - o.z1);
        s.xl4_ = -2.0 * o.s3 * (-21.0 - 9.0 * o.emsq) * zel;
        s.xgh2_ = 2.0 * o.s4 * o.z32;
        s.xgh3_ = 2.0 * o.s4 * (o.z33 - o.z31);
        s.xgh4_ = -18.0 * o.s4 * zel;
        s.xh2_ = -2.0 * o.s2 * o.z22;
        s.xh3_ = -2.0 * o.s2 * (o.z23 - o.z21);
        return o;
    }

    static void dsinit(P& s, DscomResult const& d, double t, double tc, double xpidot,
                       double eccsq, MeanState& m)
    {
        constexpr double q22 = 1.7891679e-6;
        constexpr double q31 = 2.1460748e-6;
        constexpr double q33 = 2.2123015e-7;
        constexpr double root22 = 1.7891679e-6;
        constexpr double root44 = 7.3636953e-9;
        constexpr double root54 = 2.1765803e-9;
        constexpr double rptim = 4.37526908801129966e-3;
        constexpr double root32 = 3.7393792e-7;
        constexpr double root52 = 1.1428639e-7;
        constexpr double znl = 1.5835218e-4;
        constexpr double zns = 1.19459e-5;

        double const cosim = d.cosim;
        double const sinim = d.sinim;
        double emsq = d.emsq;

        // Resonance flags: 1 = one-day (geosynchronous), 2 = half-day.
        s.irez_ = 0;
        if (m.nm < 0.0052359877 && m.nm > 0.0034906585) {
            s.irez_ = 1;
        }
        if (m.nm >= 8.26e-3 && m.nm <= 9.24e-3 && m.em >= 0.5) {
            s.irez_ = 2;
        }

        double const ses = d.ss1 * zns * d.ss5;
        double const sis = d.ss2 * zns * (d.sz11 + d.sz13);
        double const sls = -zns * d.ss3 * (d.sz1 + d.sz3 - 14.0 - 6.0 * emsq);
        double const sghs = d.ss4 * zns * (d.sz31 + d.sz33 - 6.0);
        double shs = -zns * d.ss2 * (d.sz21 + d.sz23);
        if (m.inclm < 5.2359877e-2 || m.inclm > pi - 5.2359877e-2) {
            shs = 0.0;
        }
        if (sinim != 0.0) {
            shs /= sinim;
        }
        double const sgs = sghs - cosim * shs;

        s.dedt_ = ses + d.s1 * znl * d.s5;
        s.didt_ = sis + d.s2 * znl * (d.z11 + d.z13);
        s.dmdt_ = sls - znl * d.s3 * (d.z1 + d.z3 - 14.0 - 6.0 * emsq);
        double const sghl = d.s4 * znl * (d.z31 + d.z33 - 6.0);
        double shll = -znl * d.s2 * (d.z21 + d.z23);
        if (m.inclm < 5.2359877e-2 || m.inclm > pi - 5.2359877e-2) {
            shll = 0.0;
        }
        s.domdt_ = sgs + sghl;
        s.dnodt_ = shs;
        if (sinim != 0.0) {
            s.domdt_ -= cosim / sinim * shll;
            s.dnodt_ += shll / sinim;
        }

        double const theta = std::fmod(s.gsto_ + tc * rptim, twopi);
        m.em += s.dedt_ * t;
        m.inclm += s.didt_ * t;
        m.argpm += s.domdt_ * t;
        m.nodem += s.dnodt_ * t;
        m.mm += s.dmdt_ * t;

        if (s.irez_ == 0) {
            return;
        }
        double const aonv = std::pow(m.nm / xke, x2o3);

        if (s.irez_ == 2) {
            double const cosisq = cosim * cosim;
            double const emo = m.em;
            double const em = s.ecco_;
            double const emsqo = emsq;
            emsq = eccsq;
            double const eoc = em * emsq;
            double const g201 = -0.306 - (em - 0.64) * 0.440;
            double g211, g310, g322, g410, g422, g520, g521, g532, g533;
            if (em <= 0.65) {
                g211 = 3.616 - 13.2470 * em + 16.2900 * emsq;
                g310 = -19.302 + 117.3900 * em - 228.4190 * emsq + 156.5910 * eoc;
                g322 = -18.9068 + 109.7927 * em - 214.6334 * emsq + 146.5816 * eoc;
                g410 = -41.122 + 242.6940 * em - 471.0940 * emsq + 313.9530 * eoc;
                g422 = -146.407 + 841.8800 * em - 1629.014 * emsq + 1083.4350 * eoc;
                g520 = -532.114 + 3017.977 * em - 5740.032 * emsq + 3708.2760 * eoc;
            } else {
                g211 = -72.099 + 331.819 * em - 508.738 * emsq + 266.724 * eoc;
                g310 = -346.844 + 1582.851 * em - 2415.925 * emsq + 1246.113 * eoc;
                g322 = -342.585 + 1554.908 * em - 2366.899 * emsq + 1215.972 * eoc;
                g410 = -1052.797 + 4758.686 * em - 7193.992 * emsq + 3651.957 * eoc;
                g422 = -3581.690 + 16178.110 * em - 24462.770 * emsq + 12422.520 * eoc;
                if (em > 0.715) {
                    g520 = -5149.66 + 29936.92 * em - 54087.36 * emsq + 31324.56 * eoc;
                } else {
                    g520 = 1464.74 - 4664.75 * em + 3763.64 * emsq;
                }
            }
            if (em < 0.7) {
                g533 = -919.22770 + 4988.6100 * em - 9064.7700 * emsq + 5542.21 * eoc;
                g521 = -822.71072 + 4568.6173 * em - 8491.4146 * emsq + 5337.524 * eoc;
                g532 = -853.66600 + 4690.2500 * em - 8624.7700 * emsq + 5341.4 * eoc;
            } else {
                g533 = -37995.780 + 161616.52 * em - 229838.20 * emsq + 109377.94 * eoc;
                g521 = -51752.104 + 218913.95 * em - 309468.16 * emsq + 146349.42 * eoc;
                g532 = -40023.880 + 170470.89 * em - 242699.48 * emsq + 115605.82 * eoc;
            }

            double const sini2 = sinim * sinim;
            double const f220 = 0.75 * (1.0 + 2.0 * cosim + cosisq);
            double const f221 = 1.5 * sini2;
            double const f321 = 1.875 * sinim * (1.0 - 2.0 * cosim - 3.0 * cosisq);
            double const f322 = -1.875 * sinim * (1.0 + 2.0 * cosim - 3.0 * cosisq);
            double const f441 = 35.0 * sini2 * f220;
            double const f442 = 39.3750 * sini2 * sini2;
            double const f522
                = 9.84375 * sinim
                  * (sini2 * (1.0 - 2.0 * cosim - 5.0 * cosisq)
                     + 0.33333333 * (-2.0 + 4.0 * cosim + 6.0 * cosisq));
            double const f523 = sinim
                                * (4.92187512 * sini2 * (-2.0 - 4.0 * cosim + 10.0 * cosisq)
                                   + 6.56250012 * (1.0 + 2.0 * cosim - 3.0 * cosisq));
            double const f542
                = 29.53125 * sinim
                  * (2.0 - 8.0 * cosim + cosisq * (-12.0 + 8.0 * cosim + 10.0 * cosisq));
            double const f543
                = 29.53125 * sinim
                  * (-2.0 - 8.0 * cosim + cosisq * (12.0 + 8.0 * cosim - 10.0 * cosisq));

            double const xno2 = m.nm * m.nm;
            double const ainv2 = aonv * aonv;
            double temp1 = 3.0 * xno2 * ainv2;
            double temp = temp1 * root22;
            s.d2201_ = temp * f220 * g201;
            s.d2211_ = temp * f221 * g211;
            temp1 *= aonv;
            temp = temp1 * root32;
            s.d3210_ = temp * f321 * g310;
            s.d3222_ = temp * f322 * g322;
            temp1 *= aonv;
            temp = 2.0 * temp1 * root44;
            s.d4410_ = temp * f441 * g410;
            s.d4422_ = temp * f442 * g422;
            temp1 *= aonv;
            temp = temp1 * root52;
            s.d5220_ = temp * f522 * g520;
            s.d5232_ = temp * f523 * g532;
            temp = 2.0 * temp1 * root54;
            s.d5421_ = temp * f542 * g521;
            s.d5433_ = temp * f543 * g533;
            s.xlamo_ = std::fmod(s.mo_ + s.nodeo_ + s.nodeo_ - theta - theta, twopi);
            s.xfact_ = s.mdot_ + s.dmdt_ + 2.0 * (s.nodedot_ + s.dnodt_ - rptim) - s.no_unkozai_;
            m.em = emo;
            emsq = emsqo;
        }

        if (s.irez_ == 1) {
            double const g200 = 1.0 + emsq * (-2.5 + 0.8125 * emsq);
            double const g310 = 1.0 + 2.0 * emsq;
            double const g300 = 1.0 + emsq * (-6.0 + 6.60937 * emsq);
            double const f220 = 0.75 * (1.0 + cosim) * (1.0 + cosim);
            double const f311
                = 0.9375 * sinim * sinim * (1.0 + 3.0 * cosim) - 0.75 * (1.0 + cosim);
            double f330 = 1.0 + cosim;
            f330 = 1.875 * f330 * f330 * f330;
            s.del1_ = 3.0 * m.nm * m.nm * aonv * aonv;
            s.del2_ = 2.0 * s.del1_ * f220 * g200 * q22;
            s.del3_ = 3.0 * s.del1_ * f330 * g300 * q33 * aonv;
            s.del1_ = s.del1_ * f311 * g310 * q31 * aonv;
            s.xlamo_ = std::fmod(s.mo_ + s.nodeo_ + s.argpo_ - theta, twopi);
            s.xfact_ = s.mdot_ + xpidot - rptim + s.dmdt_ + s.domdt_ + s.dnodt_ - s.no_unkozai_;
        }
        m.nm = s.no_unkozai_;
    }

    static void dspace(P const& s, double t, double tc, MeanState& m)
    {
        constexpr double fasx2 = 0.13130908;
        constexpr double fasx4 = 2.8843198;
        constexpr double fasx6 = 0.37448087;
        constexpr double g22 = 5.7686396;
        constexpr double g32 = 0.95240898;
        constexpr double g44 = 1.8014998;
        constexpr double g52 = 1.0508330;
        constexpr double g54 = 4.4108898;
        constexpr double rptim = 4.37526908801129966e-3;
        constexpr double stepp = 720.0;
        constexpr double stepn = -720.0;
        constexpr double step2 = 259200.0;

        double const theta = std::fmod(s.gsto_ + tc * rptim, twopi);
        m.em += s.dedt_ * t;
        m.inclm += s.didt_ * t;
        m.argpm += s.domdt_ * t;
        m.nodem += s.dnodt_ * t;
        m.mm += s.dmdt_ * t;

        if (s.irez_ == 0) {
            return;
        }

        // Numerical integration of the resonance terms from epoch.
        double atime = 0.0;
        double xni = s.no_unkozai_;
        double xli = s.xlamo_;
        double const delt = t > 0.0 ? stepp : stepn;
        double ft = 0.0;
        double xndt = 0.0;
        double xldot = 0.0;
        double xnddt = 0.0;
        for (;;) {
            if (s.irez_ != 2) {
                xndt = s.del1_ * std::sin(xli - fasx2) + s.del2_ * std::sin(2.0 * (xli - fasx4))
                       + s.del3_ * std::sin(3.0 * (xli - fasx6));
                xldot = xni + s.xfact_;
                xnddt = s.del1_ * std::cos(xli - fasx2)
                        + 2.0 * s.del2_ * std::cos(2.0 * (xli - fasx4))
                        + 3.0 * s.del3_ * std::cos(3.0 * (xli - fasx6));
                xnddt *= xldot;
            } else {
                double const xomi = s.argpo_ + s.argpdot_ * atime;
                double const x2omi = xomi + xomi;
                double const x2li = xli + xli;
                xndt = s.d2201_ * std::sin(x2omi + xli - g22) + s.d2211_ * std::sin(xli - g22)
                       + s.d3210_ * std::sin(xomi + xli - g32)
                       + s.d3222_ * std::sin(-xomi + xli - g32)
                       + s.d4410_ * std::sin(x2omi + x2li - g44)
                       + s.d4422_ * std::sin(x2li - g44) + s.d5220_ * std::sin(xomi + xli - g52)
                       + s.d5232_ * std::sin(-xomi + xli - g52)
                       + s.d5421_ * std::sin(xomi + x2li - g54)
                       + s.d5433_ * std::sin(-xomi + x2li - g54);
                xldot = xni + s.xfact_;
                xnddt = s.d2201_ * std::cos(x2omi + xli - g22) + s.d2211_ * std::cos(xli - g22)
                        + s.d3210_ * std::cos(xomi + xli - g32)
                        + s.d3222_ * std::cos(-xomi + xli - g32)
                        + s.d5220_ * std::cos(xomi + xli - g52)
                        + s.d5232_ * std::cos(-xomi + xli - g52)
                        + 2.0
                              * (s.d4410_ * std::cos(x2omi + x2li - g44)
                                 + s.d4422_ * std::cos(x2li - g44)
                                 + s.d5421_ * std::cos(xomi + x2li - g54)
                                 + s.d5433_ * std::cos(-xomi + x2li - g54));
                xnddt *= xldot;
            }
            if (std::fabs(t - atime) < stepp) {
                ft = t - atime;
                break;
            }
            xli = xli + xldot * delt + xndt * step2;
            xni = xni + xndt * delt + xnddt * step2;
            atime += delt;
        }

        m.nm = xni + xndt * ft + xnddt * ft * ft * 0.5;
        double const xl = xli + xldot * ft + xndt * ft * ft * 0.5;
        if (s.irez_ != 1) {
            m.mm = xl - 2.0 * m.nodem + 2.0 * theta;
        } else {
            m.mm = xl - m.nodem - m.argpm + theta;
        }
        double const dndt = m.nm - s.no_unkozai_;
        m.nm = s.no_unkozai_ + dndt;
    }
};

double gmst_rad(double jd_ut1)
{
    double const tut1 = (jd_ut1 - 2451545.0) / 36525.0;
    double temp = -6.2e-6 * tut1 * tut1 * tut1 + 0.093104 * tut1 * tut1
                  + (876600.0 * 3600 + 8640184.812866) * tut1 + 67310.54841;
    temp = std::fmod(temp * kDegToRad / 240.0, twopi);
    if (temp < 0.0) {
        temp += twopi;
    }
    return temp;
}

char const* to_string(Sgp4Status status)
{
    switch (status) {
    case Sgp4Status::ok:
        return "ok";
    case Sgp4Status::mean_eccentricity:
        return "mean eccentricity out of range";
    case Sgp4Status::mean_motion:
        return "mean motion not positive";
    case Sgp4Status::perturbed_eccentricity:
        return "perturbed eccentricity out of range";
    case Sgp4Status::semi_latus_rectum:
        return "semi-latus rectum negative";
    case Sgp4Status::decayed:
        return "orbit decayed below the Earth surface";
    }
    return "unknown";
}

PropagationError::PropagationError(int catalog_id, std::string const& name, Sgp4Status status,
                                   double minutes_since_epoch)
    : std::runtime_error(fmt::format("propagation of object {} ({}) failed at {:+.3f} min: {}",
                                     catalog_id, name, minutes_since_epoch, to_string(status))),
      catalog_id_(catalog_id),
      status_(status)
{
}

Sgp4Propagator::Sgp4Propagator(TwoLineElementSet const& tle)
    : epoch_(tle.epoch), catalog_id_(tle.catalog_id), name_(tle.name)
{
    constexpr double xpdotp = 1440.0 / twopi;  // rev/day per rad/min
    bstar_ = tle.bstar;
    ecco_ = tle.eccentricity;
    argpo_ = tle.arg_perigee_deg * kDegToRad;
    inclo_ = tle.inclination_deg * kDegToRad;
    mo_ = tle.mean_anomaly_deg * kDegToRad;
    no_kozai_ = tle.mean_motion_rev_per_day / xpdotp;
    nodeo_ = tle.raan_deg * kDegToRad;
    initialize(tle.epoch.days_since_1950());
}

void Sgp4Propagator::initialize(double epoch)
{
    double const ss = 78.0 / radiusearthkm + 1.0;
    double const qzms2ttemp = (120.0 - 78.0) / radiusearthkm;
    double const qzms2t = qzms2ttemp * qzms2ttemp * qzms2ttemp * qzms2ttemp;

    // initl
    double const eccsq = ecco_ * ecco_;
    double const omeosq = 1.0 - eccsq;
    double const rteosq = std::sqrt(omeosq);
    double const cosio = std::cos(inclo_);
    double const cosio2 = cosio * cosio;
    double const ak = std::pow(xke / no_kozai_, x2o3);
    double const d1 = 0.75 * j2 * (3.0 * cosio2 - 1.0) / (rteosq * omeosq);
    double del = d1 / (ak * ak);
    double const adel = ak * (1.0 - del * del - del * (1.0 / 3.0 + 134.0 * del * del / 81.0));
    del = d1 / (adel * adel);
    no_unkozai_ = no_kozai_ / (1.0 + del);
    double const ao = std::pow(xke / no_unkozai_, x2o3);
    double const sinio = std::sin(inclo_);
    double const po = ao * omeosq;
    double const con42 = 1.0 - 5.0 * cosio2;
    con41_ = -con42 - cosio2 - cosio2;
    double const posq = po * po;
    double const rp = ao * (1.0 - ecco_);
    method_ = 'n';
    gsto_ = gmst_rad(epoch + 2433281.5);

    (void)tumin;
    if (omeosq >= 0.0 || no_unkozai_ >= 0.0) {
        isimp_ = rp < (220.0 / radiusearthkm + 1.0) ? 1 : 0;
        double sfour = ss;
        double qzms24 = qzms2t;
        double const perige = (rp - 1.0) * radiusearthkm;

        // Atmospheric fitting parameter for perigees below 156 km.
        if (perige < 156.0) {
            sfour = perige - 78.0;
            if (perige < 98.0) {
                sfour = 20.0;
            }
            double const qzms24temp = (120.0 - sfour) / radiusearthkm;
            qzms24 = qzms24temp * qzms24temp * qzms24temp * qzms24temp;
            sfour = sfour / radiusearthkm + 1.0;
        }
        double const pinvsq = 1.0 / posq;

        double const tsi = 1.0 / (ao - sfour);
        eta_ = ao * ecco_ * tsi;
        double const etasq = eta_ * eta_;
        double const eeta = ecco_ * eta_;
        double const psisq = std::fabs(1.0 - etasq);
        double const coef = qzms24 * std::pow(tsi, 4.0);
        double const coef1 = coef / std::pow(psisq, 3.5);
        double const cc2 = coef1 * no_unkozai_
                           * (ao * (1.0 + 1.5 * etasq + eeta * (4.0 + etasq))
                              + 0.375 * j2 * tsi / psisq * con41_
                                    * (8.0 + 3.0 * etasq * (8.0 + etasq)));
        cc1_ = bstar_ * cc2;
        double cc3 = 0.0;
        if (ecco_ > 1.0e-4) {
            cc3 = -2.0 * coef * tsi * j3oj2 * no_unkozai_ * sinio / ecco_;
        }
        x1mth2_ = 1.0 - cosio2;
        cc4_ = 2.0 * no_unkozai_ * coef1 * ao * omeosq
               * (eta_ * (2.0 + 0.5 * etasq) + ecco_ * (0.5 + 2.0 * etasq)
                  - j2 * tsi / (ao * psisq)
                        * (-3.0 * con41_ * (1.0 - 2.0 * eeta + etasq * (1.5 - 0.5 * eeta))
                           + 0.75 * x1mth2_ * (2.0 * etasq - eeta * (1.0 + etasq))
                                 * std::cos(2.0 * argpo_)));
        cc5_ = 2.0 * coef1 * ao * omeosq * (1.0 + 2.75 * (etasq + eeta) + eeta * etasq);
        double const cosio4 = cosio2 * cosio2;
        double const temp1 = 1.5 * j2 * pinvsq * no_unkozai_;
        double const temp2 = 0.5 * temp1 * j2 * pinvsq;
        double const temp3 = -0.46875 * j4 * pinvsq * pinvsq * no_unkozai_;
        mdot_ = no_unkozai_ + 0.5 * temp1 * rteosq * con41_
                + 0.0625 * temp2 * rteosq * (13.0 - 78.0 * cosio2 + 137.0 * cosio4);
        argpdot_ = -0.5 * temp1 * con42 + 0.0625 * temp2 * (7.0 - 114.0 * cosio2 + 395.0 * cosio4)
                   + temp3 * (3.0 - 36.0 * cosio2 + 49.0 * cosio4);
        double const xhdot1 = -temp1 * cosio;
        nodedot_ = xhdot1
                   + (0.5 * temp2 * (4.0 - 19.0 * cosio2) + 2.0 * temp3 * (3.0 - 7.0 * cosio2))
                         * cosio;
        double const xpidot = argpdot_ + nodedot_;
        omgcof_ = bstar_ * cc3 * std::cos(argpo_);
        xmcof_ = 0.0;
        if (ecco_ > 1.0e-4) {
            xmcof_ = -x2o3 * coef * bstar_ / eeta;
        }
        nodecf_ = 3.5 * omeosq * xhdot1 * cc1_;
        t2cof_ = 1.5 * cc1_;
        if (std::fabs(cosio + 1.0) > 1.5e-12) {
            xlcof_ = -0.25 * j3oj2 * sinio * (3.0 + 5.0 * cosio) / (1.0 + cosio);
        } else {
            xlcof_ = -0.25 * j3oj2 * sinio * (3.0 + 5.0 * cosio) / temp4;
        }
        aycof_ = -0.5 * j3oj2 * sinio;
        double const delmotemp = 1.0 + eta_ * std::cos(mo_);
        delmo_ = delmotemp * delmotemp * delmotemp;
        sinmao_ = std::sin(mo_);
        x7thm1_ = 7.0 * cosio2 - 1.0;

        // Deep space for periods of 225 minutes or more.
        if ((twopi / no_unkozai_) >= 225.0) {
            method_ = 'd';
            isimp_ = 1;
            double const tc = 0.0;
            auto const d = Sgp4Access::dscom(*this, epoch, ecco_, argpo_, tc, inclo_, nodeo_,
                                             no_unkozai_);
            // Initial periodics are evaluated with init set, which leaves
            // the elements untouched; only peo..pho stay zero.
            MeanState m{d.em, 0.0, inclo_, 0.0, d.nm, 0.0};
            Sgp4Access::dsinit(*this, d, 0.0, tc, xpidot, eccsq, m);
        }

        if (isimp_ != 1) {
            double const cc1sq = cc1_ * cc1_;
            d2_ = 4.0 * ao * tsi * cc1sq;
            double const temp = d2_ * tsi * cc1_ / 3.0;
            d3_ = (17.0 * ao + sfour) * temp;
            d4_ = 0.5 * temp * ao * tsi * (221.0 * ao + 31.0 * sfour) * cc1_;
            t3cof_ = d2_ + 2.0 * cc1sq;
            t4cof_ = 0.25 * (3.0 * d3_ + cc1_ * (12.0 * d2_ + 10.0 * cc1sq));
            t5cof_ = 0.2
                     * (3.0 * d4_ + 12.0 * cc1_ * d3_ + 6.0 * d2_ * d2_
                        + 15.0 * cc1sq * (2.0 * d2_ + cc1sq));
        }
    }

    Vec3 r;
    Vec3 v;
    init_status_ = evaluate(0.0, r, v);
}

Sgp4Status Sgp4Propagator::evaluate(double t, Vec3& position_km,
                                    Vec3& velocity_km_s) const noexcept
{
    // Secular gravity and atmospheric drag.
    double const xmdf = mo_ + mdot_ * t;
    double const argpdf = argpo_ + argpdot_ * t;
    double const nodedf = nodeo_ + nodedot_ * t;
    double argpm = argpdf;
    double mm = xmdf;
    double const t2 = t * t;
    double nodem = nodedf + nodecf_ * t2;
    double tempa = 1.0 - cc1_ * t;
    double tempe = bstar_ * cc4_ * t;
    double templ = t2cof_ * t2;

    if (isimp_ != 1) {
        double const delomg = omgcof_ * t;
        double const delmtemp = 1.0 + eta_ * std::cos(xmdf);
        double const delm = xmcof_ * (delmtemp * delmtemp * delmtemp - delmo_);
        double const temp = delomg + delm;
        mm = xmdf + temp;
        argpm = argpdf - temp;
        double const t3 = t2 * t;
        double const t4 = t3 * t;
        tempa = tempa - d2_ * t2 - d3_ * t3 - d4_ * t4;
        tempe = tempe + bstar_ * cc5_ * (std::sin(mm) - sinmao_);
        templ = templ + t3cof_ * t3 + t4 * (t4cof_ + t * t5cof_);
    }

    MeanState m{ecco_, argpm, inclo_, mm, no_unkozai_, nodem};
    if (method_ == 'd') {
        Sgp4Access::dspace(*this, t, t, m);
    }
    double nm = m.nm;
    double em = m.em;
    double const inclm = m.inclm;
    argpm = m.argpm;
    mm = m.mm;
    nodem = m.nodem;

    if (nm <= 0.0) {
        return Sgp4Status::mean_motion;
    }
    double const am = std::pow(xke / nm, x2o3) * tempa * tempa;
    nm = xke / std::pow(am, 1.5);
    em -= tempe;

    if (em >= 1.0 || em < -0.001) {
        return Sgp4Status::mean_eccentricity;
    }
    if (em < 1.0e-6) {
        em = 1.0e-6;
    }
    mm += no_unkozai_ * templ;
    double xlm = mm + argpm + nodem;
    nodem = std::fmod(nodem, twopi);
    argpm = std::fmod(argpm, twopi);
    xlm = std::fmod(xlm, twopi);
    mm = std::fmod(xlm - argpm - nodem, twopi);

    // Lunar-solar periodics.
    double ep = em;
    double xincp = inclm;
    double argpp = argpm;
    double nodep = nodem;
    double mp = mm;
    double sinip = std::sin(inclm);
    double cosip = std::cos(inclm);
    double aycof = aycof_;
    double xlcof = xlcof_;
    double con41 = con41_;
    double x1mth2 = x1mth2_;
    double x7thm1 = x7thm1_;

    if (method_ == 'd') {
        Sgp4Access::dpper(*this, t, false, ep, xincp, nodep, argpp, mp);
        if (xincp < 0.0) {
            xincp = -xincp;
            nodep += pi;
            argpp -= pi;
        }
        if (ep < 0.0 || ep > 1.0) {
            return Sgp4Status::perturbed_eccentricity;
        }
        sinip = std::sin(xincp);
        cosip = std::cos(xincp);
        aycof = -0.5 * j3oj2 * sinip;
        if (std::fabs(cosip + 1.0) > 1.5e-12) {
            xlcof = -0.25 * j3oj2 * sinip * (3.0 + 5.0 * cosip) / (1.0 + cosip);
        } else {
            xlcof = -0.25 * j3oj2 * sinip * (3.0 + 5.0 * cosip) / temp4;
        }
    }

    // Long-period periodics.
    double const axnl = ep * std::cos(argpp);
    double temp = 1.0 / (am * (1.0 - ep * ep));
    double const aynl = ep * std::sin(argpp) + temp * aycof;
    double const xl = mp + argpp + nodep + temp * xlcof * axnl;

    // Kepler's equation.
    double const u = std::fmod(xl - nodep, twopi);
    double eo1 = u;
    double tem5 = 9999.9;
    double sineo1 = 0.0;
    double coseo1 = 0.0;
    for (int ktr = 1; std::fabs(tem5) >= 1.0e-12 && ktr <= 10; ++ktr) {
        sineo1 = std::sin(eo1);
        coseo1 = std::cos(eo1);
        tem5 = 1.0 - coseo1 * axnl - sineo1 * aynl;
        tem5 = (u - aynl * coseo1 + axnl * sineo1 - eo1) / tem5;
        if (std::fabs(tem5) >= 0.95) {
            tem5 = tem5 > 0.0 ? 0.95 : -0.95;
        }
        eo1 += tem5;
    }

    // Short-period periodics.
    double const ecose = axnl * coseo1 + aynl * sineo1;
    double const esine = axnl * sineo1 - aynl * coseo1;
    double const el2 = axnl * axnl + aynl * aynl;
    double const pl = am * (1.0 - el2);
    if (pl < 0.0) {
        return Sgp4Status::semi_latus_rectum;
    }
    double const rl = am * (1.0 - ecose);
    double const rdotl = std::sqrt(am) * esine / rl;
    double const rvdotl = std::sqrt(pl) / rl;
    double const betal = std::sqrt(1.0 - el2);
    temp = esine / (1.0 + betal);
    double const sinu = am / rl * (sineo1 - aynl - axnl * temp);
    double const cosu = am / rl * (coseo1 - axnl + aynl * temp);
    double su = std::atan2(sinu, cosu);
    double const sin2u = (cosu + cosu) * sinu;
    double const cos2u = 1.0 - 2.0 * sinu * sinu;
    temp = 1.0 / pl;
    double const temp1 = 0.5 * j2 * temp;
    double const temp2 = temp1 * temp;

    if (method_ == 'd') {
        double const cosisq = cosip * cosip;
        con41 = 3.0 * cosisq - 1.0;
        x1mth2 = 1.0 - cosisq;
        x7thm1 = 7.0 * cosisq - 1.0;
    }
    double const mrt
        = rl * (1.0 - 1.5 * temp2 * betal * con41) + 0.5 * temp1 * x1mth2 * cos2u;
    su -= 0.25 * temp2 * x7thm1 * sin2u;
    double const xnode = nodep + 1.5 * temp2 * cosip * sin2u;
    double const xinc = xincp + 1.5 * temp2 * cosip * sinip * cos2u;
    double const mvt = rdotl - nm * temp1 * x1mth2 * sin2u / xke;
    double const rvdot = rvdotl + nm * temp1 * (x1mth2 * cos2u + 1.5 * con41) / xke;

    // Orientation vectors.
    double const sinsu = std::sin(su);
    double const cossu = std::cos(su);
    double const snod = std::sin(xnode);
    double const cnod = std::cos(xnode);
    double const sini = std::sin(xinc);
    double const cosi = std::cos(xinc);
    double const xmx = -snod * cosi;
    double const xmy = cnod * cosi;
    double const ux = xmx * sinsu + cnod * cossu;
    double const uy = xmy * sinsu + snod * cossu;
    double const uz = sini * sinsu;
    double const vx = xmx * cossu - cnod * sinsu;
    double const vy = xmy * cossu - snod * sinsu;
    double const vz = sini * cossu;

    position_km = {mrt * ux * radiusearthkm, mrt * uy * radiusearthkm, mrt * uz * radiusearthkm};
    velocity_km_s = {(mvt * ux + rvdot * vx) * vkmpersec, (mvt * uy + rvdot * vy) * vkmpersec,
                     (mvt * uz + rvdot * vz) * vkmpersec};

    if (mrt < 1.0) {
        return Sgp4Status::decayed;
    }
    return Sgp4Status::ok;
}

StateVector Sgp4Propagator::propagate(UtcInstant const& t) const
{
    double const minutes = t.minutes_since(epoch_);
    StateVector state;
    state.epoch = t;
    auto const status = evaluate(minutes, state.position_km, state.velocity_km_s);
    if (status != Sgp4Status::ok) {
        throw PropagationError(catalog_id_, name_, status, minutes);
    }
    return state;
}

}  // namespace megalink
