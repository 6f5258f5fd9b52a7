// SGP4/SDP4 following the public reference formulation (Vallado et al.,
// "Revisiting Spacetrack Report #3", 2006), improved operation mode.

#include <ldit/sgp4.hpp>

#include <chrono>
#include <cmath>
#include <numbers>

namespace ldit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDeg2Rad = std::numbers::pi / 180.0;
constexpr double kX2o3 = 2.0 / 3.0;
constexpr double kTemp4 = 1.5e-12;

struct Dscom {
    double snodm, cnodm, sinim, cosim, sinomm, cosomm, day, e3, ee2, em, emsq, gam;
    double peo, pgho, pho, pinco, plo, rtemsq, se2, se3, sgh2, sgh3, sgh4, sh2, sh3;
    double si2, si3, sl2, sl3, sl4, s1, s2, s3, s4, s5, s6, s7;
    double ss1, ss2, ss3, ss4, ss5, ss6, ss7, sz1, sz2, sz3, sz11, sz12, sz13;
    double sz21, sz22, sz23, sz31, sz32, sz33, xgh2, xgh3, xgh4, xh2, xh3;
    double xi2, xi3, xl2, xl3, xl4, nm, z1, z2, z3, z11, z12, z13, z21, z22, z23, z31, z32, z33;
    double zmol, zmos;
};

Dscom dscom(double epoch, double ep, double argpp, double tc, double inclp, double nodep, double np) {
    constexpr double zes = 0.01675;
    constexpr double zel = 0.05490;
    constexpr double c1ss = 2.9864797e-6;
    constexpr double c1l = 4.7968065e-7;
    constexpr double zsinis = 0.39785416;
    constexpr double zcosis = 0.91744867;
    constexpr double zcosgs = 0.1945905;
    constexpr double zsings = -0.98088458;

    Dscom d{};
    d.nm = np;
    d.em = ep;
    d.snodm = std::sin(nodep);
    d.cnodm = std::cos(nodep);
    d.sinomm = std::sin(argpp);
    d.cosomm = std::cos(argpp);
    d.sinim = std::sin(inclp);
    d.cosim = std::cos(inclp);
    d.emsq = d.em * d.em;
    const double betasq = 1.0 - d.emsq;
    d.rtemsq = std::sqrt(betasq);

    d.peo = 0.0;
    d.pinco = 0.0;
    d.plo = 0.0;
    d.pgho = 0.0;
    d.pho = 0.0;
    d.day = epoch + 18261.5 + tc / 1440.0;
    const double xnodce = std::fmod(4.5236020 - 9.2422029e-4 * d.day, kTwoPi);
    const double stem = std::sin(xnodce);
    const double ctem = std::cos(xnodce);
    const double zcosil = 0.91375164 - 0.03568096 * ctem;
    const double zsinil = std::sqrt(1.0 - zcosil * zcosil);
    const double zsinhl = 0.089683511 * stem / zsinil;
    const double zcoshl = std::sqrt(1.0 - zsinhl * zsinhl);
    d.gam = 5.8351514 + 0.0019443680 * d.day;
    double zx = 0.39785416 * stem / zsinil;
    const double zy = zcoshl * ctem + 0.91744867 * zsinhl * stem;
    zx = std::atan2(zx, zy);
    zx = d.gam + zx - xnodce;
    const double zcosgl = std::cos(zx);
    const double zsingl = std::sin(zx);

    double zcosg = zcosgs;
    double zsing = zsings;
    double zcosi = zcosis;
    double zsini = zsinis;
    double zcosh = d.cnodm;
    double zsinh = d.snodm;
    double cc = c1ss;
    const double xnoi = 1.0 / d.nm;

    for (int lsflg = 1; lsflg <= 2; ++lsflg) {
        const double a1 = zcosg * zcosh + zsing * zcosi * zsinh;
        const double a3 = -zsing * zcosh + zcosg * zcosi * zsinh;
        const double a7 = -zcosg * zsinh + zsing * zcosi * zcosh;
        const double a8 = zsing * zsini;
        const double a9 = zsing * zsinh + zcosg * zcosi * zcosh;
        const double a10 = zcosg * zsini;
        const double a2 = d.cosim * a7 + d.sinim * a8;
        const double a4 = d.cosim * a9 + d.sinim * a10;
        const double a5 = -d.sinim * a7 + d.cosim * a8;
        const double a6 = -d.sinim * a9 + d.cosim * a10;

        const double x1 = a1 * d.cosomm + a2 * d.sinomm;
        const double x2 = a3 * d.cosomm + a4 * d.sinomm;
        const double x3 = -a1 * d.sinomm + a2 * d.cosomm;
        const double x4 = -a3 * d.sinomm + a4 * d.cosomm;
        const double x5 = a5 * d.sinomm;
        const double x6 = a6 * d.sinomm;
        const double x7 = a5 * d.cosomm;
        const double x8 = a6 * d.cosomm;

        d.z31 = 12.0 * x1 * x1 - 3.0 * x3 * x3;
        d.z32 = 24.0 * x1 * x2 - 6.0 * x3 * x4;
        d.z33 = 12.0 * x2 * x2 - 3.0 * x4 * x4;
        d.z1 = 3.0 * (a1 * a1 + a2 * a2) + d.z31 * d.emsq;
        d.z2 = 6.0 * (a1 * a3 + a2 * a4) + d.z32 * d.emsq;
        d.z3 = 3.0 * (a3 * a3 + a4 * a4) + d.z33 * d.emsq;
        d.z11 = -6.0 * a1 * a5 + d.emsq * (-24.0 * x1 * x7 - 6.0 * x3 * x5);
        d.z12 = -6.0 * (a1 * a6 + a3 * a5) +
                d.emsq * (-24.0 * (x2 * x7 + x1 * x8) - 6.0 * (x3 * x6 + x4 * x5));
        d.z13 = -6.0 * a3 * a6 + d.emsq * (-24.0 * x2 * x8 - 6.0 * x4 * x6);
        d.z21 = 6.0 * a2 * a5 + d.emsq * (24.0 * x1 * x5 - 6.0 * x3 * x7);
        d.z22 = 6.0 * (a4 * a5 + a2 * a6) +
                d.emsq * (24.0 * (x2 * x5 + x1 * x6) - 6.0 * (x4 * x7 + x3 * x8));
        d.z23 = 6.0 * a4 * a6 + d.emsq * (24.0 * x2 * x6 - 6.0 * x4 * x8);
        d.z1 = d.z1 + d.z1 + betasq * d.z31;
        d.z2 = d.z2 + d.z2 + betasq * d.z32;
        d.z3 = d.z3 + d.z3 + betasq * d.z33;
        d.s3 = cc * xnoi;
        d.s2 = -0.5 * d.s3 / d.rtemsq;
        d.s4 = d.s3 * d.rtemsq;
        d.s1 = -15.0 * d.em * d.s4;
        d.s5 = x1 * x3 + x2 * x4;
        d.s6 = x2 * x3 + x1 * x4;
        d.s7 = x2 * x4 - x1 * x3;

        if (lsflg == 1) {
            d.ss1 = d.s1;
            d.ss2 = d.s2;
            d.ss3 = d.s3;
            d.ss4 = d.s4;
            d.ss5 = d.s5;
            d.ss6 = d.s6;
            d.ss7 = d.s7;
            d.sz1 = d.z1;
            d.sz2 = d.z2;
            d.sz3 = d.z3;
            d.sz11 = d.z11;
            d.sz12 = d.z12;
            d.sz13 = d.z13;
            d.sz21 = d.z21;
            d.sz22 = d.z22;
            d.sz23 = d.z23;
            d.sz31 = d.z31;
            d.sz32 = d.z32;
            d.sz33 = d.z33;
            zcosg = zcosgl;
            zsing = zsingl;
            zcosi = zcosil;
            zsini = zsinil;
            zcosh = zcoshl * d.cnodm + zsinhl * d.snodm;
            zsinh = d.snodm * zcoshl - d.cnodm * zsinhl;
            cc = c1l;
        }
    }

    d.zmol = std::fmod(4.7199672 + 0.22997150 * d.day - d.gam, kTwoPi);
    d.zmos = std::fmod(6.2565837 + 0.017201977 * d.day, kTwoPi);

    d.se2 = 2.0 * d.ss1 * d.ss6;
    d.se3 = 2.0 * d.ss1 * d.ss7;
    d.si2 = 2.0 * d.ss2 * d.sz12;
    d.si3 = 2.0 * d.ss2 * (d.sz13 - d.sz11);
    d.sl2 = -2.0 * d.ss3 * d.sz2;
    d.sl3 = -2.0 * d.ss3 * (d.sz3 - d.sz1);
    d.sl4 = -2.0 * d.ss3 * (-21.0 - 9.0 * d.emsq) * zes;
    d.sgh2 = 2.0 * d.ss4 * d.sz32;
    d.sgh3 = 2.0 * d.ss4 * (d.sz33 - d.sz31);
    d.sgh4 = -18.0 * d.ss4 * zes;
    d.sh2 = -2.0 * d.ss2 * d.sz22;
    d.sh3 = -2.0 * d.ss2 * (d.sz23 - d.sz21);

    d.ee2 = 2.0 * d.s1 * d.s6;
    d.e3 = 2.0 * d.s1 * d.s7;
    d.xi2 = 2.0 * d.s2 * d.z12;
    d.xi3 = 2.0 * d.s2 * (d.z13 - d.z11);
    d.xl2 = -2.0 * d.s3 * d.z2;
    d.xl3 = -2.0 * d.s3 * (d.z3 - d.z1);
    d.xl4 = -2.0 * d.s3 * (-21.0 - 9.0 * d.emsq) * zel;
    d.xgh2 = 2.0 * d.s4 * d.z32;
    d.xgh3 = 2.0 * d.s4 * (d.z33 - d.z31);
    d.xgh4 = -18.0 * d.s4 * zel;
    d.xh2 = -2.0 * d.s2 * d.z22;
    d.xh3 = -2.0 * d.s2 * (d.z23 - d.z21);
    return d;
}

} // namespace

GravityConstants gravity_constants(GravityModel model) noexcept {
    GravityConstants g{};
    switch (model) {
    case GravityModel::Wgs72Old:
        g.mu = 398600.79964;
        g.radius_earth = 6378.135;
        g.xke = 0.0743669161;
        g.j2 = 0.001082616;
        g.j3 = -0.00000253881;
        g.j4 = -0.00000165597;
        break;
    case GravityModel::Wgs72:
        g.mu = 398600.8;
        g.radius_earth = 6378.135;
        g.xke = 60.0 / std::sqrt(g.radius_earth * g.radius_earth * g.radius_earth / g.mu);
        g.j2 = 0.001082616;
        g.j3 = -0.00000253881;
        g.j4 = -0.00000165597;
        break;
    case GravityModel::Wgs84:
        g.mu = 398600.5;
        g.radius_earth = 6378.137;
        g.xke = 60.0 / std::sqrt(g.radius_earth * g.radius_earth * g.radius_earth / g.mu);
        g.j2 = 0.00108262998905;
        g.j3 = -0.00000253215306;
        g.j4 = -0.00000161098761;
        break;
    }
    g.tumin = 1.0 / g.xke;
    g.j3oj2 = g.j3 / g.j2;
    return g;
}

double gmst_radians(double jd_ut1) noexcept {
    const double tut1 = (jd_ut1 - 2451545.0) / 36525.0;
    double temp = -6.2e-6 * tut1 * tut1 * tut1 + 0.093104 * tut1 * tut1 +
                  (876600.0 * 3600 + 8640184.812866) * tut1 + 67310.54841; // seconds
    temp = std::fmod(temp * kDeg2Rad / 240.0, kTwoPi);
    if (temp < 0.0) temp += kTwoPi;
    return temp;
}

Sgp4Elements Sgp4Elements::from_tle(const TleRecord& tle) {
    constexpr double xpdotp = 1440.0 / (2.0 * kPi);
    Sgp4Elements el;
    // Days since 1949-12-31 00:00 UT, built from integer days to keep the
    // fractional day exact.
    const auto jan1 = std::chrono::sys_days{std::chrono::year{tle.epoch_year} / 1 / 1};
    el.epoch_days_1950 = static_cast<double>(jan1.time_since_epoch().count() + 7306) + (tle.epoch_day - 1.0);
    el.bstar = tle.bstar;
    el.ndot = tle.mean_motion_dot / (xpdotp * 1440.0);
    el.nddot = tle.mean_motion_ddot / (xpdotp * 1440.0 * 1440.0);
    el.eccentricity = tle.eccentricity;
    el.arg_perigee = tle.arg_perigee * kDeg2Rad;
    el.inclination = tle.inclination * kDeg2Rad;
    el.mean_anomaly = tle.mean_anomaly * kDeg2Rad;
    el.mean_motion = tle.mean_motion / xpdotp;
    el.raan = tle.raan * kDeg2Rad;
    return el;
}

Sgp4::Sgp4(const TleRecord& tle, GravityModel model) : grav_(gravity_constants(model)) {
    init(Sgp4Elements::from_tle(tle));
}

Sgp4::Sgp4(const Sgp4Elements& elements, GravityModel model) : grav_(gravity_constants(model)) {
    init(elements);
}

void Sgp4::dpper(double t, bool init, DeepSpaceLongPeriod& p) const {
    constexpr double zns = 1.19459e-5;
    constexpr double zes = 0.01675;
    constexpr double znl = 1.5835218e-4;
    constexpr double zel = 0.05490;

    double zm = init ? zmos_ : zmos_ + zns * t;
    double zf = zm + 2.0 * zes * std::sin(zm);
    double sinzf = std::sin(zf);
    double f2 = 0.5 * sinzf * sinzf - 0.25;
    double f3 = -0.5 * sinzf * std::cos(zf);
    const double ses = se2_ * f2 + se3_ * f3;
    const double sis = si2_ * f2 + si3_ * f3;
    const double sls = sl2_ * f2 + sl3_ * f3 + sl4_ * sinzf;
    const double sghs = sgh2_ * f2 + sgh3_ * f3 + sgh4_ * sinzf;
    const double shs = sh2_ * f2 + sh3_ * f3;

    zm = init ? zmol_ : zmol_ + znl * t;
    zf = zm + 2.0 * zel * std::sin(zm);
    sinzf = std::sin(zf);
    f2 = 0.5 * sinzf * sinzf - 0.25;
    f3 = -0.5 * sinzf * std::cos(zf);
    const double sel = ee2_ * f2 + e3_ * f3;
    const double sil = xi2_ * f2 + xi3_ * f3;
    const double sll = xl2_ * f2 + xl3_ * f3 + xl4_ * sinzf;
    const double sghl = xgh2_ * f2 + xgh3_ * f3 + xgh4_ * sinzf;
    const double shll = xh2_ * f2 + xh3_ * f3;

    double pe = ses + sel;
    double pinc = sis + sil;
    double pl = sls + sll;
    double pgh = sghs + sghl;
    double ph = shs + shll;

    if (init) {
        return;
    }
    pe -= peo_;
    pinc -= pinco_;
    pl -= plo_;
    pgh -= pgho_;
    ph -= pho_;
    p.inclp += pinc;
    p.ep += pe;
    const double sinip = std::sin(p.inclp);
    const double cosip = std::cos(p.inclp);

    if (p.inclp >= 0.2) {
        ph /= sinip;
        pgh -= cosip * ph;
        p.argpp += pgh;
        p.nodep += ph;
        p.mp += pl;
    } else {
        // Lyddane modification for low inclination.
        const double sinop = std::sin(p.nodep);
        const double cosop = std::cos(p.nodep);
        double alfdp = sinip * sinop;
        double betdp = sinip * cosop;
        const double dalf = ph * cosop + pinc * cosip * sinop;
        const double dbet = -ph * sinop + pinc * cosip * cosop;
        alfdp += dalf;
        betdp += dbet;
        p.nodep = std::fmod(p.nodep, kTwoPi);
        const double xls = p.mp + p.argpp + pl + pgh + (cosip - pinc * sinip) * p.nodep;
        const double xnoh = p.nodep;
        p.nodep = std::atan2(alfdp, betdp);
        if (std::fabs(xnoh - p.nodep) > kPi) {
            if (p.nodep < xnoh) {
                p.nodep += kTwoPi;
            } else {
                p.nodep -= kTwoPi;
            }
        }
        p.mp += pl;
        p.argpp = xls - p.mp - cosip * p.nodep;
    }
}

void Sgp4::init(const Sgp4Elements& el) {
    const double epoch = el.epoch_days_1950;
    bstar_ = el.bstar;
    ecco_ = el.eccentricity;
    argpo_ = el.arg_perigee;
    inclo_ = el.inclination;
    mo_ = el.mean_anomaly;
    no_kozai_ = el.mean_motion;
    nodeo_ = el.raan;

    const double ss = 78.0 / grav_.radius_earth + 1.0;
    const double qzms2ttemp = (120.0 - 78.0) / grav_.radius_earth;
    const double qzms2t = qzms2ttemp * qzms2ttemp * qzms2ttemp * qzms2ttemp;

    // initl
    const double eccsq = ecco_ * ecco_;
    const double omeosq = 1.0 - eccsq;
    const double rteosq = std::sqrt(omeosq);
    const double cosio = std::cos(inclo_);
    const double cosio2 = cosio * cosio;
    const double ak = std::pow(grav_.xke / no_kozai_, kX2o3);
    const double d1 = 0.75 * grav_.j2 * (3.0 * cosio2 - 1.0) / (rteosq * omeosq);
    double del = d1 / (ak * ak);
    const double adel = ak * (1.0 - del * del - del * (1.0 / 3.0 + 134.0 * del * del / 81.0));
    del = d1 / (adel * adel);
    no_unkozai_ = no_kozai_ / (1.0 + del);
    const double ao = std::pow(grav_.xke / no_unkozai_, kX2o3);
    const double sinio = std::sin(inclo_);
    const double po = ao * omeosq;
    const double con42 = 1.0 - 5.0 * cosio2;
    con41_ = -con42 - cosio2 - cosio2;
    const double posq = po * po;
    const double rp = ao * (1.0 - ecco_);
    method_ = 'n';
    gsto_ = gmst_radians(epoch + 2433281.5);

    if (omeosq >= 0.0 || no_unkozai_ >= 0.0) {
        isimp_ = 0;
        if (rp < 220.0 / grav_.radius_earth + 1.0) {
            isimp_ = 1;
        }
        double sfour = ss;
        double qzms24 = qzms2t;
        const double perige = (rp - 1.0) * grav_.radius_earth;

        if (perige < 156.0) {
            sfour = perige - 78.0;
            if (perige < 98.0) {
                sfour = 20.0;
            }
            const double qzms24temp = (120.0 - sfour) / grav_.radius_earth;
            qzms24 = qzms24temp * qzms24temp * qzms24temp * qzms24temp;
            sfour = sfour / grav_.radius_earth + 1.0;
        }
        const double pinvsq = 1.0 / posq;

        const double tsi = 1.0 / (ao - sfour);
        eta_ = ao * ecco_ * tsi;
        const double etasq = eta_ * eta_;
        const double eeta = ecco_ * eta_;
        const double psisq = std::fabs(1.0 - etasq);
        const double coef = qzms24 * std::pow(tsi, 4.0);
        const double coef1 = coef / std::pow(psisq, 3.5);
        const double cc2 = coef1 * no_unkozai_ *
                           (ao * (1.0 + 1.5 * etasq + eeta * (4.0 + etasq)) +
                            0.375 * grav_.j2 * tsi / psisq * con41_ * (8.0 + 3.0 * etasq * (8.0 + etasq)));
        cc1_ = bstar_ * cc2;
        double cc3 = 0.0;
        if (ecco_ > 1.0e-4) {
            cc3 = -2.0 * coef * tsi * grav_.j3oj2 * no_unkozai_ * sinio / ecco_;
        }
        x1mth2_ = 1.0 - cosio2;
        cc4_ = 2.0 * no_unkozai_ * coef1 * ao * omeosq *
               (eta_ * (2.0 + 0.5 * etasq) + ecco_ * (0.5 + 2.0 * etasq) -
                grav_.j2 * tsi / (ao * psisq) *
                    (-3.0 * con41_ * (1.0 - 2.0 * eeta + etasq * (1.5 - 0.5 * eeta)) +
                     0.75 * x1mth2_ * (2.0 * etasq - eeta * (1.0 + etasq)) * std::cos(2.0 * argpo_)));
        cc5_ = 2.0 * coef1 * ao * omeosq * (1.0 + 2.75 * (etasq + eeta) + eeta * etasq);
        const double cosio4 = cosio2 * cosio2;
        const double temp1 = 1.5 * grav_.j2 * pinvsq * no_unkozai_;
        const double temp2 = 0.5 * temp1 * grav_.j2 * pinvsq;
        const double temp3 = -0.46875 * grav_.j4 * pinvsq * pinvsq * no_unkozai_;
        mdot_ = no_unkozai_ + 0.5 * temp1 * rteosq * con41_ +
                0.0625 * temp2 * rteosq * (13.0 - 78.0 * cosio2 + 137.0 * cosio4);
        argpdot_ = -0.5 * temp1 * con42 + 0.0625 * temp2 * (7.0 - 114.0 * cosio2 + 395.0 * cosio4) +
                   temp3 * (3.0 - 36.0 * cosio2 + 49.0 * cosio4);
        const double xhdot1 = -temp1 * cosio;
        nodedot_ = xhdot1 + (0.5 * temp2 * (4.0 - 19.0 * cosio2) + 2.0 * temp3 * (3.0 - 7.0 * cosio2)) * cosio;
        const double xpidot = argpdot_ + nodedot_;
        omgcof_ = bstar_ * cc3 * std::cos(argpo_);
        xmcof_ = 0.0;
        if (ecco_ > 1.0e-4) {
            xmcof_ = -kX2o3 * coef * bstar_ / eeta;
        }
        nodecf_ = 3.5 * omeosq * xhdot1 * cc1_;
        t2cof_ = 1.5 * cc1_;
        if (std::fabs(cosio + 1.0) > 1.5e-12) {
            xlcof_ = -0.25 * grav_.j3oj2 * sinio * (3.0 + 5.0 * cosio) / (1.0 + cosio);
        } else {
            xlcof_ = -0.25 * grav_.j3oj2 * sinio * (3.0 + 5.0 * cosio) / kTemp4;
        }
        aycof_ = -0.5 * grav_.j3oj2 * sinio;
        const double delmotemp = 1.0 + eta_ * std::cos(mo_);
        delmo_ = delmotemp * delmotemp * delmotemp;
        sinmao_ = std::sin(mo_);
        x7thm1_ = 7.0 * cosio2 - 1.0;

        // Deep space initialization for periods of 225 minutes or more.
        if (kTwoPi / no_unkozai_ >= 225.0) {
            method_ = 'd';
            isimp_ = 1;
            const double tc = 0.0;
            double inclm = inclo_;

            const Dscom ds = dscom(epoch, ecco_, argpo_, tc, inclo_, nodeo_, no_unkozai_);
            e3_ = ds.e3;
            ee2_ = ds.ee2;
            peo_ = ds.peo;
            pgho_ = ds.pgho;
            pho_ = ds.pho;
            pinco_ = ds.pinco;
            plo_ = ds.plo;
            se2_ = ds.se2;
            se3_ = ds.se3;
            sgh2_ = ds.sgh2;
            sgh3_ = ds.sgh3;
            sgh4_ = ds.sgh4;
            sh2_ = ds.sh2;
            sh3_ = ds.sh3;
            si2_ = ds.si2;
            si3_ = ds.si3;
            sl2_ = ds.sl2;
            sl3_ = ds.sl3;
            sl4_ = ds.sl4;
            xgh2_ = ds.xgh2;
            xgh3_ = ds.xgh3;
            xgh4_ = ds.xgh4;
            xh2_ = ds.xh2;
            xh3_ = ds.xh3;
            xi2_ = ds.xi2;
            xi3_ = ds.xi3;
            xl2_ = ds.xl2;
            xl3_ = ds.xl3;
            xl4_ = ds.xl4;
            zmol_ = ds.zmol;
            zmos_ = ds.zmos;

            // dpper at init returns before applying corrections; kept for parity.
            DeepSpaceLongPeriod lp{ecco_, inclo_, nodeo_, argpo_, mo_};
            dpper(0.0, true, lp);

            double argpm = 0.0;
            double nodem = 0.0;
            double mm = 0.0;
            double em = ds.em;
            double emsq = ds.emsq;
            double nm = ds.nm;
            const double cosim = ds.cosim;
            const double sinim = ds.sinim;
            const double t = 0.0;

            // dsinit
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

            irez_ = 0;
            if (nm < 0.0052359877 && nm > 0.0034906585) {
                irez_ = 1;
            }
            if (nm >= 8.26e-3 && nm <= 9.24e-3 && em >= 0.5) {
                irez_ = 2;
            }

            const double ses = ds.ss1 * zns * ds.ss5;
            const double sis = ds.ss2 * zns * (ds.sz11 + ds.sz13);
            const double sls = -zns * ds.ss3 * (ds.sz1 + ds.sz3 - 14.0 - 6.0 * emsq);
            const double sghs = ds.ss4 * zns * (ds.sz31 + ds.sz33 - 6.0);
            double shs = -zns * ds.ss2 * (ds.sz21 + ds.sz23);
            if (inclm < 5.2359877e-2 || inclm > kPi - 5.2359877e-2) {
                shs = 0.0;
            }
            if (sinim != 0.0) {
                shs = shs / sinim;
            }
            const double sgs = sghs - cosim * shs;

            dedt_ = ses + ds.s1 * znl * ds.s5;
            didt_ = sis + ds.s2 * znl * (ds.z11 + ds.z13);
            dmdt_ = sls - znl * ds.s3 * (ds.z1 + ds.z3 - 14.0 - 6.0 * emsq);
            const double sghl = ds.s4 * znl * (ds.z31 + ds.z33 - 6.0);
            double shll = -znl * ds.s2 * (ds.z21 + ds.z23);
            if (inclm < 5.2359877e-2 || inclm > kPi - 5.2359877e-2) {
                shll = 0.0;
            }
            domdt_ = sgs + sghl;
            dnodt_ = shs;
            if (sinim != 0.0) {
                domdt_ = domdt_ - cosim / sinim * shll;
                dnodt_ = dnodt_ + shll / sinim;
            }

            const double dndt = 0.0;
            const double theta = std::fmod(gsto_ + tc * rptim, kTwoPi);
            em = em + dedt_ * t;
            inclm = inclm + didt_ * t;
            argpm = argpm + domdt_ * t;
            nodem = nodem + dnodt_ * t;
            mm = mm + dmdt_ * t;

            if (irez_ != 0) {
                const double aonv = std::pow(nm / grav_.xke, kX2o3);

                if (irez_ == 2) {
                    const double cosisq = cosim * cosim;
                    const double emo = em;
                    em = ecco_;
                    const double emsqo = emsq;
                    emsq = eccsq;
                    const double eoc = em * emsq;
                    const double g201 = -0.306 - (em - 0.64) * 0.440;
                    double g211, g310, g322, g410, g422, g520, g533, g521, g532;

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

                    const double sini2 = sinim * sinim;
                    const double f220 = 0.75 * (1.0 + 2.0 * cosim + cosisq);
                    const double f221 = 1.5 * sini2;
                    const double f321 = 1.875 * sinim * (1.0 - 2.0 * cosim - 3.0 * cosisq);
                    const double f322 = -1.875 * sinim * (1.0 + 2.0 * cosim - 3.0 * cosisq);
                    const double f441 = 35.0 * sini2 * f220;
                    const double f442 = 39.3750 * sini2 * sini2;
                    const double f522 = 9.84375 * sinim *
                                        (sini2 * (1.0 - 2.0 * cosim - 5.0 * cosisq) +
                                         0.33333333 * (-2.0 + 4.0 * cosim + 6.0 * cosisq));
                    const double f523 = sinim * (4.92187512 * sini2 * (-2.0 - 4.0 * cosim + 10.0 * cosisq) +
                                                 6.56250012 * (1.0 + 2.0 * cosim - 3.0 * cosisq));
                    const double f542 = 29.53125 * sinim *
                                        (2.0 - 8.0 * cosim + cosisq * (-12.0 + 8.0 * cosim + 10.0 * cosisq));
                    const double f543 = 29.53125 * sinim *
                                        (-2.0 - 8.0 * cosim + cosisq * (12.0 + 8.0 * cosim - 10.0 * cosisq));
                    const double xno2 = nm * nm;
                    const double ainv2 = aonv * aonv;
                    double temp1r = 3.0 * xno2 * ainv2;
                    double temp = temp1r * root22;
                    d2201_ = temp * f220 * g201;
                    d2211_ = temp * f221 * g211;
                    temp1r = temp1r * aonv;
                    temp = temp1r * root32;
                    d3210_ = temp * f321 * g310;
                    d3222_ = temp * f322 * g322;
                    temp1r = temp1r * aonv;
                    temp = 2.0 * temp1r * root44;
                    d4410_ = temp * f441 * g410;
                    d4422_ = temp * f442 * g422;
                    temp1r = temp1r * aonv;
                    temp = temp1r * root52;
                    d5220_ = temp * f522 * g520;
                    d5232_ = temp * f523 * g532;
                    temp = 2.0 * temp1r * root54;
                    d5421_ = temp * f542 * g521;
                    d5433_ = temp * f543 * g533;
                    xlamo_ = std::fmod(mo_ + nodeo_ + nodeo_ - theta - theta, kTwoPi);
                    xfact_ = mdot_ + dmdt_ + 2.0 * (nodedot_ + dnodt_ - rptim) - no_unkozai_;
                    em = emo;
                    emsq = emsqo;
                }

                if (irez_ == 1) {
                    const double g200 = 1.0 + emsq * (-2.5 + 0.8125 * emsq);
                    const double g310 = 1.0 + 2.0 * emsq;
                    const double g300 = 1.0 + emsq * (-6.0 + 6.60937 * emsq);
                    const double f220 = 0.75 * (1.0 + cosim) * (1.0 + cosim);
                    const double f311 = 0.9375 * sinim * sinim * (1.0 + 3.0 * cosim) - 0.75 * (1.0 + cosim);
                    double f330 = 1.0 + cosim;
                    f330 = 1.875 * f330 * f330 * f330;
                    del1_ = 3.0 * nm * nm * aonv * aonv;
                    del2_ = 2.0 * del1_ * f220 * g200 * q22;
                    del3_ = 3.0 * del1_ * f330 * g300 * q33 * aonv;
                    del1_ = del1_ * f311 * g310 * q31 * aonv;
                    xlamo_ = std::fmod(mo_ + nodeo_ + argpo_ - theta, kTwoPi);
                    xfact_ = mdot_ + xpidot - rptim + dmdt_ + domdt_ + dnodt_ - no_unkozai_;
                }

                xli_ = xlamo_;
                xni_ = no_unkozai_;
                atime_ = 0.0;
                nm = no_unkozai_ + dndt;
            }
        }

        if (isimp_ != 1) {
            const double cc1sq = cc1_ * cc1_;
            d2_ = 4.0 * ao * tsi * cc1sq;
            const double temp = d2_ * tsi * cc1_ / 3.0;
            d3_ = (17.0 * ao + sfour) * temp;
            d4_ = 0.5 * temp * ao * tsi * (221.0 * ao + 31.0 * sfour) * cc1_;
            t3cof_ = d2_ + 2.0 * cc1sq;
            t4cof_ = 0.25 * (3.0 * d3_ + cc1_ * (12.0 * d2_ + 10.0 * cc1sq));
            t5cof_ = 0.2 * (3.0 * d4_ + 12.0 * cc1_ * d3_ + 6.0 * d2_ * d2_ + 15.0 * cc1sq * (2.0 * d2_ + cc1sq));
        }
    }

    init_error_ = propagate(0.0).error;
}

Sgp4Result Sgp4::propagate(double tsince, ResonanceCache* cache) const {
    constexpr double rptim = 4.37526908801129966e-3;
    const double vkmpersec = grav_.radius_earth * grav_.xke / 60.0;
    const double t = tsince;
    Sgp4Result out;

    // Secular gravity and atmospheric drag.
    const double xmdf = mo_ + mdot_ * t;
    const double argpdf = argpo_ + argpdot_ * t;
    const double nodedf = nodeo_ + nodedot_ * t;
    double argpm = argpdf;
    double mm = xmdf;
    const double t2 = t * t;
    double nodem = nodedf + nodecf_ * t2;
    double tempa = 1.0 - cc1_ * t;
    double tempe = bstar_ * cc4_ * t;
    double templ = t2cof_ * t2;

    if (isimp_ != 1) {
        const double delomg = omgcof_ * t;
        const double delmtemp = 1.0 + eta_ * std::cos(xmdf);
        const double delm = xmcof_ * (delmtemp * delmtemp * delmtemp - delmo_);
        const double temp = delomg + delm;
        mm = xmdf + temp;
        argpm = argpdf - temp;
        const double t3 = t2 * t;
        const double t4 = t3 * t;
        tempa = tempa - d2_ * t2 - d3_ * t3 - d4_ * t4;
        tempe = tempe + bstar_ * cc5_ * (std::sin(mm) - sinmao_);
        templ = templ + t3cof_ * t3 + t4 * (t4cof_ + t * t5cof_);
    }

    double nm = no_unkozai_;
    double em = ecco_;
    double inclm = inclo_;

    if (method_ == 'd') {
        // dspace
        constexpr double fasx2 = 0.13130908;
        constexpr double fasx4 = 2.8843198;
        constexpr double fasx6 = 0.37448087;
        constexpr double g22 = 5.7686396;
        constexpr double g32 = 0.95240898;
        constexpr double g44 = 1.8014998;
        constexpr double g52 = 1.0508330;
        constexpr double g54 = 4.4108898;
        constexpr double stepp = 720.0;
        constexpr double stepn = -720.0;
        constexpr double step2 = 259200.0;

        const double tc = t;
        double dndt = 0.0;
        const double theta = std::fmod(gsto_ + tc * rptim, kTwoPi);
        em = em + dedt_ * t;
        inclm = inclm + didt_ * t;
        argpm = argpm + domdt_ * t;
        nodem = nodem + dnodt_ * t;
        mm = mm + dmdt_ * t;

        double ft = 0.0;
        if (irez_ != 0) {
            ResonanceCache local{atime_, xli_, xni_};
            ResonanceCache& rs = cache ? *cache : local;
            if (rs.atime == 0.0 || t * rs.atime <= 0.0 || std::fabs(t) < std::fabs(rs.atime)) {
                rs.atime = 0.0;
                rs.xni = no_unkozai_;
                rs.xli = xlamo_;
            }
            const double delt = t > 0.0 ? stepp : stepn;

            double xndt = 0.0, xldot = 0.0, xnddt = 0.0;
            for (;;) {
                if (irez_ != 2) {
                    xndt = del1_ * std::sin(rs.xli - fasx2) + del2_ * std::sin(2.0 * (rs.xli - fasx4)) +
                           del3_ * std::sin(3.0 * (rs.xli - fasx6));
                    xldot = rs.xni + xfact_;
                    xnddt = del1_ * std::cos(rs.xli - fasx2) + 2.0 * del2_ * std::cos(2.0 * (rs.xli - fasx4)) +
                            3.0 * del3_ * std::cos(3.0 * (rs.xli - fasx6));
                    xnddt = xnddt * xldot;
                } else {
                    const double xomi = argpo_ + argpdot_ * rs.atime;
                    const double x2omi = xomi + xomi;
                    const double x2li = rs.xli + rs.xli;
                    xndt = d2201_ * std::sin(x2omi + rs.xli - g22) + d2211_ * std::sin(rs.xli - g22) +
                           d3210_ * std::sin(xomi + rs.xli - g32) + d3222_ * std::sin(-xomi + rs.xli - g32) +
                           d4410_ * std::sin(x2omi + x2li - g44) + d4422_ * std::sin(x2li - g44) +
                           d5220_ * std::sin(xomi + rs.xli - g52) + d5232_ * std::sin(-xomi + rs.xli - g52) +
                           d5421_ * std::sin(xomi + x2li - g54) + d5433_ * std::sin(-xomi + x2li - g54);
                    xldot = rs.xni + xfact_;
                    xnddt = d2201_ * std::cos(x2omi + rs.xli - g22) + d2211_ * std::cos(rs.xli - g22) +
                            d3210_ * std::cos(xomi + rs.xli - g32) + d3222_ * std::cos(-xomi + rs.xli - g32) +
                            d5220_ * std::cos(xomi + rs.xli - g52) + d5232_ * std::cos(-xomi + rs.xli - g52) +
                            2.0 * (d4410_ * std::cos(x2omi + x2li - g44) + d4422_ * std::cos(x2li - g44) +
                                   d5421_ * std::cos(xomi + x2li - g54) + d5433_ * std::cos(-xomi + x2li - g54));
                    xnddt = xnddt * xldot;
                }

                if (std::fabs(t - rs.atime) >= stepp) {
                    rs.xli = rs.xli + xldot * delt + xndt * step2;
                    rs.xni = rs.xni + xndt * delt + xnddt * step2;
                    rs.atime = rs.atime + delt;
                } else {
                    ft = t - rs.atime;
                    break;
                }
            }

            nm = rs.xni + xndt * ft + xnddt * ft * ft * 0.5;
            const double xl = rs.xli + xldot * ft + xndt * ft * ft * 0.5;
            if (irez_ != 1) {
                mm = xl - 2.0 * nodem + 2.0 * theta;
            } else {
                mm = xl - nodem - argpm + theta;
            }
            dndt = nm - no_unkozai_;
            nm = no_unkozai_ + dndt;
        }
    }

    if (nm <= 0.0) {
        out.error = 2;
        return out;
    }
    const double am = std::pow(grav_.xke / nm, kX2o3) * tempa * tempa;
    nm = grav_.xke / std::pow(am, 1.5);
    em = em - tempe;

    if (em >= 1.0 || em < -0.001) {
        out.error = 1;
        return out;
    }
    if (em < 1.0e-6) {
        em = 1.0e-6;
    }
    mm = mm + no_unkozai_ * templ;
    double xlm = mm + argpm + nodem;

    nodem = std::fmod(nodem, kTwoPi);
    argpm = std::fmod(argpm, kTwoPi);
    xlm = std::fmod(xlm, kTwoPi);
    mm = std::fmod(xlm - argpm - nodem, kTwoPi);

    const double sinim = std::sin(inclm);
    const double cosim = std::cos(inclm);

    // Lunar-solar periodics.
    DeepSpaceLongPeriod lp{em, inclm, nodem, argpm, mm};
    double sinip = sinim;
    double cosip = cosim;
    double aycof = aycof_;
    double xlcof = xlcof_;
    double con41 = con41_;
    double x1mth2 = x1mth2_;
    double x7thm1 = x7thm1_;
    if (method_ == 'd') {
        dpper(t, false, lp);
        if (lp.inclp < 0.0) {
            lp.inclp = -lp.inclp;
            lp.nodep = lp.nodep + kPi;
            lp.argpp = lp.argpp - kPi;
        }
        if (lp.ep < 0.0 || lp.ep > 1.0) {
            out.error = 3;
            return out;
        }
        sinip = std::sin(lp.inclp);
        cosip = std::cos(lp.inclp);
        aycof = -0.5 * grav_.j3oj2 * sinip;
        if (std::fabs(cosip + 1.0) > 1.5e-12) {
            xlcof = -0.25 * grav_.j3oj2 * sinip * (3.0 + 5.0 * cosip) / (1.0 + cosip);
        } else {
            xlcof = -0.25 * grav_.j3oj2 * sinip * (3.0 + 5.0 * cosip) / kTemp4;
        }
    }

    // Long period periodics.
    const double axnl = lp.ep * std::cos(lp.argpp);
    double temp = 1.0 / (am * (1.0 - lp.ep * lp.ep));
    const double aynl = lp.ep * std::sin(lp.argpp) + temp * aycof;
    const double xl = lp.mp + lp.argpp + lp.nodep + temp * xlcof * axnl;

    // Kepler's equation.
    const double u = std::fmod(xl - lp.nodep, kTwoPi);
    double eo1 = u;
    double tem5 = 9999.9;
    int ktr = 1;
    double sineo1 = 0.0;
    double coseo1 = 0.0;
    while (std::fabs(tem5) >= 1.0e-12 && ktr <= 10) {
        sineo1 = std::sin(eo1);
        coseo1 = std::cos(eo1);
        tem5 = 1.0 - coseo1 * axnl - sineo1 * aynl;
        tem5 = (u - aynl * coseo1 + axnl * sineo1 - eo1) / tem5;
        if (std::fabs(tem5) >= 0.95) {
            tem5 = tem5 > 0.0 ? 0.95 : -0.95;
        }
        eo1 = eo1 + tem5;
        ++ktr;
    }

    // Short period preliminary quantities.
    const double ecose = axnl * coseo1 + aynl * sineo1;
    const double esine = axnl * sineo1 - aynl * coseo1;
    const double el2 = axnl * axnl + aynl * aynl;
    const double pl = am * (1.0 - el2);
    if (pl < 0.0) {
        out.error = 4;
        return out;
    }

    const double rl = am * (1.0 - ecose);
    const double rdotl = std::sqrt(am) * esine / rl;
    const double rvdotl = std::sqrt(pl) / rl;
    const double betal = std::sqrt(1.0 - el2);
    temp = esine / (1.0 + betal);
    const double sinu = am / rl * (sineo1 - aynl - axnl * temp);
    const double cosu = am / rl * (coseo1 - axnl + aynl * temp);
    double su = std::atan2(sinu, cosu);
    const double sin2u = (cosu + cosu) * sinu;
    const double cos2u = 1.0 - 2.0 * sinu * sinu;
    temp = 1.0 / pl;
    const double temp1 = 0.5 * grav_.j2 * temp;
    const double temp2 = temp1 * temp;

    if (method_ == 'd') {
        const double cosisq = cosip * cosip;
        con41 = 3.0 * cosisq - 1.0;
        x1mth2 = 1.0 - cosisq;
        x7thm1 = 7.0 * cosisq - 1.0;
    }
    const double mrt = rl * (1.0 - 1.5 * temp2 * betal * con41) + 0.5 * temp1 * x1mth2 * cos2u;
    su = su - 0.25 * temp2 * x7thm1 * sin2u;
    const double xnode = lp.nodep + 1.5 * temp2 * cosip * sin2u;
    const double xinc = lp.inclp + 1.5 * temp2 * cosip * sinip * cos2u;
    const double mvt = rdotl - nm * temp1 * x1mth2 * sin2u / grav_.xke;
    const double rvdot = rvdotl + nm * temp1 * (x1mth2 * cos2u + 1.5 * con41) / grav_.xke;

    // Orientation vectors.
    const double sinsu = std::sin(su);
    const double cossu = std::cos(su);
    const double snod = std::sin(xnode);
    const double cnod = std::cos(xnode);
    const double sini = std::sin(xinc);
    const double cosi = std::cos(xinc);
    const double xmx = -snod * cosi;
    const double xmy = cnod * cosi;
    const double ux = xmx * sinsu + cnod * cossu;
    const double uy = xmy * sinsu + snod * cossu;
    const double uz = sini * sinsu;
    const double vx = xmx * cossu - cnod * sinsu;
    const double vy = xmy * cossu - snod * sinsu;
    const double vz = sini * cossu;

    const double mr = mrt * grav_.radius_earth;
    out.position = {mr * ux, mr * uy, mr * uz};
    out.velocity = {(mvt * ux + rvdot * vx) * vkmpersec, (mvt * uy + rvdot * vy) * vkmpersec,
                    (mvt * uz + rvdot * vz) * vkmpersec};

    if (mrt < 1.0) {
        out.error = 6;
    }
    return out;
}

} // namespace ldit
