var r1 = 1 + 2 + 3;
var r2 = 1 - (2 - 3);
var r3 = (1 + 2) * 3;
var r4 = 1 + 2 * 3;
var r5 = -(1 + 2);
var r6 = !(true && false) || !true;
var r7 = 10 - 4 - 3 - 2;
var r8 = 100 / 10 / 5;
var r9 = 2 * (3 + 4) % 5;
var r10 = (1 < 2) === (3 < 4);
var assigned = r1;
assigned = r2 = r3;
var viaArrow = ((x) => x * x)(4);
