var chained = wx.getSystemInfoSync().windowWidth;
wx.setStorage({ key: "draft", data: { text: "hi" } });
console.log(wx.getStorageSync("draft"));
foo(bar(baz(1)), 2);
obj.method(1)(2);
grid[0][1](3);
function foo(a, b) {
  return a + b;
}
function bar(x) {
  return x;
}
function baz(y) {
  return y;
}
var obj = { method: function (n) {
  return function (m) {
    return n + m;
  };
} };
var grid = [[null, function (k) {
  return k;
}]];
