function outer(x) {
  function inner(y) {
    return y * y;
  }
  var anon = function (z) {
    return z + 1;
  };
  var named = function helper(w) {
    return w - 1;
  };
  return inner(x) + anon(x) + named(x);
}

var arrow0 = () => 0;
var arrow1 = (x) => x + 1;
var arrow3 = (a, b, c) => {
  var s = a + b + c;
  return s / 3;
};
var arrowObj = (id) => ({ id: id, ok: true });
var result = outer(2) + arrow0() + arrow1(1) + arrow3(1, 2, 3) + arrowObj(9).id;
(function () {
  result += 1;
})();
