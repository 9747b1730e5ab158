function makeStack() {
  var items = [];
  return {
    push: function (x) {
      items[items.length] = x;
      return items.length;
    },
    pop: function () {
      if (items.length === 0) {
        return null;
      }
      var top = items[items.length - 1];
      items.length = items.length - 1;
      return top;
    },
    size: function () {
      return items.length;
    }
  };
}

module.exports = { makeStack: makeStack };
