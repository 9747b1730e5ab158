var a = 1 + 2 * 3 - 4 / 2 % 3;
var b = (1 + 2) * (3 - 4);
var c = a < b || a > b && a !== b;
var d = a <= 1 === true;
var e = b >= 2 !== false;
var f = !c;
var g = -a + +b;
var h = !(a == b);
let i = a;
i += 1;
i -= 2;
i *= 3;
i /= 4;
i %= 5;
const done = i === 0 || !f;
