// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "cofinal/report.hpp"

using namespace cofinal;

TEST_CASE("decimal digit budget for a 2^-p window") {
    CHECK(decimal_digits_for(0) == 2);
    CHECK(decimal_digits_for(1) == 3);
    CHECK(decimal_digits_for(4) == 4);
    CHECK(decimal_digits_for(10) == 6);
    CHECK(decimal_digits_for(20) == 9);
    CHECK(decimal_digits_for(-3) == 2);  // clamped
    // Budget is enough: 10^-(digits-2) <= 2^-p for p up to the CLI range.
    for (long p = 0; p <= 64; ++p) {
        int d = decimal_digits_for(p);
        Rational ten_pow(1);
        for (int i = 0; i < d - 2; ++i) ten_pow = ten_pow / Rational(10);
        CHECK(ten_pow <= pow2(-p));
    }
}

TEST_CASE("decimal rendering marks truncation") {
    CHECK(render_decimal(Rational(1, 2), 4) == "0.5000");
    CHECK(render_decimal(Rational(1, 3), 4) == "0.3333~");
    CHECK(render_decimal(Rational(-1, 8), 1) == "-0.125");  // 3 digits at p=1
    CHECK(render_decimal(Rational(2), 0) == "2.00");  // 2 digits even at p=0
}

TEST_CASE("run ids are FNV-1a of the canonical config") {
    CHECK(run_id_for("") == "cbf29ce484222325");
    CHECK(run_id_for("a") == "af63dc4c8601ec8c");
    std::string id = run_id_for("command=integrate;fn=linear;p=4");
    CHECK(id.size() == 16);
    CHECK(id == run_id_for("command=integrate;fn=linear;p=4"));
    CHECK(id != run_id_for("command=integrate;fn=linear;p=5"));
    for (char c : id) CHECK(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));
}

namespace {

ReportRow sample_row() {
    return ReportRow{"0123456789abcdef", "integrate", "linear", "p=4", "0.5000", "2^-4", "pass"};
}

}  // namespace

TEST_CASE("csv output is the fixed header plus one line per row") {
    std::ostringstream os;
    write_csv(os, {sample_row(), ReportRow{"id", "c", "f", "p", "v", "b", "s"}});
    CHECK(os.str() ==
          "run_id,command,fn,param,value,bound,status\n"
          "0123456789abcdef,integrate,linear,p=4,0.5000,2^-4,pass\n"
          "id,c,f,p,v,b,s\n");
    std::ostringstream empty;
    write_csv(empty, {});
    CHECK(empty.str() == "run_id,command,fn,param,value,bound,status\n");
}

TEST_CASE("table output pads every column to its widest entry plus two") {
    std::ostringstream os;
    write_table(os, {sample_row()});
    CHECK(os.str() ==
          "run_id            command    fn      param  value   bound  status\n"
          "0123456789abcdef  integrate  linear  p=4    0.5000  2^-4   pass\n");
}

TEST_CASE("field separators cannot be smuggled into a report") {
    ReportRow bad = sample_row();
    bad.param = "a,b";
    std::ostringstream os;
    CHECK_THROWS_AS(write_csv(os, {bad}), std::invalid_argument);
    CHECK_THROWS_AS(write_table(os, {bad}), std::invalid_argument);
    ReportRow multiline = sample_row();
    multiline.value = "1\n2";
    CHECK_THROWS_AS(write_csv(os, {multiline}), std::invalid_argument);
}
